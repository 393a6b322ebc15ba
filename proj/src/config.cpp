#include "vlcnoma/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double to_double(std::string_view text, const std::string& key, int line) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError("'" + key + "' expects a number, got '" + std::string(text) + "'", line);
    }
    return v;
}

std::uint64_t to_u64(std::string_view text, const std::string& key, int line) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        // Allow 1e6-style integers.
        const double d = to_double(text, key, line);
        if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
            throw ConfigError("'" + key + "' expects a non-negative integer", line);
        }
        return static_cast<std::uint64_t>(d);
    }
    return v;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, const std::string&, int)>;

template <typename Accessor>
Setter real(Accessor access) {
    return [access](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
        access(c) = to_double(v, key, line);
    };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"room_height_m", real([](ExperimentConfig& c) -> double& { return c.geometry.room_height; })},
        {"cell_radius_m", real([](ExperimentConfig& c) -> double& { return c.geometry.cell_radius; })},
        {"rx_height_u1_m", real([](ExperimentConfig& c) -> double& { return c.geometry.receiver_height[0]; })},
        {"rx_height_u2_m", real([](ExperimentConfig& c) -> double& { return c.geometry.receiver_height[1]; })},
        {"rx_height_u3_m", real([](ExperimentConfig& c) -> double& { return c.geometry.receiver_height[2]; })},
        {"r11_m", real([](ExperimentConfig& c) -> double& { return c.geometry.r11; })},
        {"r21_m", real([](ExperimentConfig& c) -> double& { return c.geometry.r21; })},
        {"r22_m", real([](ExperimentConfig& c) -> double& { return c.geometry.r22; })},
        {"r32_m", real([](ExperimentConfig& c) -> double& { return c.geometry.r32; })},
        {"semi_angle_deg", real([](ExperimentConfig& c) -> double& { return c.front_end.semi_angle_deg; })},
        {"detector_area_m2", real([](ExperimentConfig& c) -> double& { return c.front_end.detector_area; })},
        {"responsivity_a_per_w", real([](ExperimentConfig& c) -> double& { return c.front_end.responsivity; })},
        {"filter_gain", real([](ExperimentConfig& c) -> double& { return c.front_end.filter_gain; })},
        {"fov_deg", real([](ExperimentConfig& c) -> double& { return c.front_end.fov_deg; })},
        {"concentrator_index", real([](ExperimentConfig& c) -> double& { return c.front_end.concentrator_index; })},
        {"target_power_w", real([](ExperimentConfig& c) -> double& { return c.sweep.target_power; })},
        {"gain_override",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             const auto parts = split(v, ',');
             if (parts.size() != 4) {
                 throw ConfigError("'" + key + "' expects four gains h11, h21, h22, h32", line);
             }
             ChannelGains g{to_double(parts[0], key, line), to_double(parts[1], key, line),
                            to_double(parts[2], key, line), to_double(parts[3], key, line)};
             for (double h : {g.h11, g.h21, g.h22, g.h32}) {
                 if (!(h > 0.0) || !std::isfinite(h)) {
                     throw ConfigError("'" + key + "' gains must be positive", line);
                 }
             }
             c.gain_override = g;
         }},
        {"eta",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             const auto parts = split(v, ',');
             if (parts.size() != 3) throw ConfigError("'" + key + "' expects three integers", line);
             std::array<int, 3> bits{};
             for (std::size_t k = 0; k < 3; ++k) {
                 const auto* end = parts[k].data() + parts[k].size();
                 const auto [ptr, ec] = std::from_chars(parts[k].data(), end, bits[k]);
                 if (ec != std::errc{} || ptr != end || parts[k].empty()) {
                     throw ConfigError("'" + key + "' expects three integers", line);
                 }
             }
             c.eta = {bits[0], bits[1], bits[2]};
         }},
        {"snr_db",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             const auto parts = split(v, ':');
             try {
                 if (parts.size() == 3) {
                     c.sweep.snr_db = snr_range(to_double(parts[0], key, line), to_double(parts[1], key, line),
                                                to_double(parts[2], key, line));
                     return;
                 }
             } catch (const InvalidParameter& e) {
                 throw ConfigError("'" + key + "': " + e.what(), line);
             }
             // Otherwise a comma-separated list.
             c.sweep.snr_db.clear();
             for (auto p : split(v, ',')) c.sweep.snr_db.push_back(to_double(p, key, line));
         }},
        {"trials",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             c.sweep.trials_per_point = to_u64(v, key, line);
         }},
        {"seed",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             c.sweep.seed = to_u64(v, key, line);
         }},
        {"min_errors",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             c.sweep.min_errors = to_u64(v, key, line);
         }},
        {"schemes",
         [](ExperimentConfig& c, std::string_view v, const std::string& key, int line) {
             c.sweep.schemes.clear();
             for (auto p : split(v, ',')) {
                 try {
                     c.sweep.schemes.push_back(parse_scheme(p));
                 } catch (const InvalidParameter& e) {
                     throw ConfigError("'" + key + "': " + e.what(), line);
                 }
             }
         }},
        {"output",
         [](ExperimentConfig& c, std::string_view v, const std::string&, int) { c.output = std::string(v); }},
    };
    return table;
}

// Which key owns a validation failure, for error messages.
template <typename F>
void check(const std::string& key, F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

} // namespace

SweepConfig ExperimentConfig::default_sweep() {
    SweepConfig s;
    s.snr_db = snr_range(100.0, 170.0, 2.0);
    s.trials_per_point = 100000;
    s.seed = 1;
    s.target_power = 1.0;
    s.schemes = {Scheme::noma_sic, Scheme::noma_jml, Scheme::oma};
    s.min_errors = 0;
    return s;
}

ExperimentConfig ExperimentConfig::reference() {
    ExperimentConfig cfg;
    cfg.gain_override = reference_gains();
    return cfg;
}

ChannelGains ExperimentConfig::effective_gains() const {
    if (gain_override) return *gain_override;
    return gain_matrix(geometry, front_end).gains;
}

void ExperimentConfig::validate() const {
    const auto& g = geometry;
    if (!(g.room_height > 0.0)) throw ConfigError("room_height_m: must be positive");
    for (int w = 0; w < 3; ++w) {
        const double lw = g.receiver_height[w];
        if (!(lw >= 0.0 && lw < g.room_height)) {
            throw ConfigError("rx_height_u" + std::to_string(w + 1) + "_m: must lie in [0, room_height_m)");
        }
    }
    const std::pair<const char*, double> distances[] = {
        {"r11_m", g.r11}, {"r21_m", g.r21}, {"r22_m", g.r22}, {"r32_m", g.r32}, {"cell_radius_m", g.cell_radius}};
    for (const auto& [key, r] : distances) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError(std::string(key) + ": must be non-negative");
    }
    const auto& fe = front_end;
    if (!(fe.semi_angle_deg > 0.0 && fe.semi_angle_deg < 90.0)) {
        throw ConfigError("semi_angle_deg: must lie in (0, 90)");
    }
    if (!(fe.fov_deg > 0.0 && fe.fov_deg <= 90.0)) throw ConfigError("fov_deg: must lie in (0, 90]");
    if (!(fe.detector_area > 0.0)) throw ConfigError("detector_area_m2: must be positive");
    if (!(fe.responsivity > 0.0)) throw ConfigError("responsivity_a_per_w: must be positive");
    if (!(fe.filter_gain > 0.0)) throw ConfigError("filter_gain: must be positive");
    if (!(fe.concentrator_index >= 1.0)) throw ConfigError("concentrator_index: must be >= 1");
    check("eta", [&] { eta.validate(); });
    check("eta", [&] { (void)OmaConfig::matching(eta, 1.0); });
    if (!(sweep.target_power > 0.0) || !std::isfinite(sweep.target_power)) {
        throw ConfigError("target_power_w: must be positive");
    }
    if (sweep.snr_db.empty()) throw ConfigError("snr_db: needs at least one point");
    if (sweep.trials_per_point < 1) throw ConfigError("trials: must be at least 1");
    if (sweep.schemes.empty()) throw ConfigError("schemes: needs at least one scheme");
    check("trials", [&] { sweep.validate(); });
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    const auto& table = setters();
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const auto key = std::string(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError("unknown key '" + key + "'", line_no);
        if (value.empty()) throw ConfigError("'" + key + "' has no value", line_no);
        it->second(cfg, value, key, line_no);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<std::string> config_lines(const ExperimentConfig& cfg) {
    const auto& g = cfg.geometry;
    const auto& fe = cfg.front_end;
    const auto& s = cfg.sweep;
    auto kv = [](const std::string& k, const std::string& v) { return k + " = " + v; };
    std::vector<std::string> out = {
        kv("room_height_m", format_number(g.room_height)),
        kv("cell_radius_m", format_number(g.cell_radius)),
        kv("rx_height_u1_m", format_number(g.receiver_height[0])),
        kv("rx_height_u2_m", format_number(g.receiver_height[1])),
        kv("rx_height_u3_m", format_number(g.receiver_height[2])),
        kv("r11_m", format_number(g.r11)),
        kv("r21_m", format_number(g.r21)),
        kv("r22_m", format_number(g.r22)),
        kv("r32_m", format_number(g.r32)),
        kv("semi_angle_deg", format_number(fe.semi_angle_deg)),
        kv("detector_area_m2", format_number(fe.detector_area)),
        kv("responsivity_a_per_w", format_number(fe.responsivity)),
        kv("filter_gain", format_number(fe.filter_gain)),
        kv("fov_deg", format_number(fe.fov_deg)),
        kv("concentrator_index", format_number(fe.concentrator_index)),
    };
    if (cfg.gain_override) {
        const auto& h = *cfg.gain_override;
        out.push_back(kv("gain_override", format_number(h.h11) + ", " + format_number(h.h21) + ", " +
                                              format_number(h.h22) + ", " + format_number(h.h32)));
    }
    out.push_back(kv("eta", std::to_string(cfg.eta.u1) + ", " + std::to_string(cfg.eta.u2) + ", " +
                                std::to_string(cfg.eta.u3)));
    out.push_back(kv("target_power_w", format_number(s.target_power)));
    std::string snr;
    for (std::size_t k = 0; k < s.snr_db.size(); ++k) {
        if (k > 0) snr += ", ";
        snr += format_number(s.snr_db[k]);
    }
    out.push_back(kv("snr_db", snr));
    out.push_back(kv("trials", std::to_string(s.trials_per_point)));
    out.push_back(kv("seed", std::to_string(s.seed)));
    out.push_back(kv("min_errors", std::to_string(s.min_errors)));
    std::string schemes;
    for (std::size_t k = 0; k < s.schemes.size(); ++k) {
        if (k > 0) schemes += ", ";
        schemes += to_string(s.schemes[k]);
    }
    out.push_back(kv("schemes", schemes));
    if (!cfg.output.empty()) out.push_back(kv("output", cfg.output));
    return out;
}

} // namespace vlcnoma
