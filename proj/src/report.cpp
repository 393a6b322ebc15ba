#include "vlcnoma/report.hpp"

#include <sstream>

#include "vlcnoma/analytic.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/philox.hpp"

namespace vlcnoma {

namespace {

constexpr std::string_view kBaselineNote =
    "single-cell NOMA baseline series not produced: its constellation design is outside this model";

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_preamble(const ExperimentConfig& cfg, std::string_view title, std::string_view note = {}) {
    std::string out = "# " + std::string(title) + "\n";
    if (!note.empty()) out += "# " + std::string(note) + "\n";
    out += config_comment(cfg);
    return out;
}

SerCurve filter(const SerCurve& curve, bool (*keep)(const SerRow&)) {
    SerCurve out;
    for (const auto& row : curve.rows) {
        if (keep(row)) out.rows.push_back(row);
    }
    return out;
}

} // namespace

Experiment parse_experiment(std::string_view name) {
    for (Experiment e : {Experiment::fig2, Experiment::fig3, Experiment::fig4, Experiment::gains,
                         Experiment::design, Experiment::complexity}) {
        if (to_string(e) == name) return e;
    }
    throw InvalidParameter("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(Experiment experiment) noexcept {
    switch (experiment) {
    case Experiment::fig2: return "fig2";
    case Experiment::fig3: return "fig3";
    case Experiment::fig4: return "fig4";
    case Experiment::gains: return "gains";
    case Experiment::design: return "design";
    case Experiment::complexity: return "complexity";
    }
    return "unknown";
}

std::string config_comment(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& line : config_lines(cfg)) {
        if (line.rfind("output = ", 0) == 0) continue;
        out += "# " + line + "\n";
    }
    return out;
}

std::string ser_csv(const SerCurve& curve, const ExperimentConfig& cfg, std::string_view note) {
    std::string out = csv_preamble(cfg, "symbol error rate sweep", note);
    out += kSerHeader;
    out += '\n';
    for (const auto& r : curve.rows) {
        const auto& e = r.estimate;
        out += format_number(r.snr_db);
        out += ',';
        out += to_string(r.user);
        out += ',';
        out += to_string(r.scheme);
        out += ',' + std::to_string(e.trials) + ',' + std::to_string(e.errors) + ',' + format_number(e.ser) +
               ',' + format_number(e.ci_low) + ',' + format_number(e.ci_high) + ',' + opt_number(r.analytic) +
               '\n';
    }
    return out;
}

std::string gains_csv(const ExperimentConfig& cfg) {
    const auto model = gain_matrix(cfg.geometry, cfg.front_end);
    std::string out = csv_preamble(cfg, "channel gains: Lambertian model vs configured override");
    if (model.diagnostic) out += "# model: " + *model.diagnostic + "\n";
    if (cfg.gain_override) {
        if (auto why = cfg.gain_override->ordering_diagnostic()) out += "# override: " + *why + "\n";
    }
    out += "link,model,override,ratio\n";
    const std::pair<const char*, double ChannelGains::*> links[] = {
        {"h11", &ChannelGains::h11}, {"h21", &ChannelGains::h21}, {"h22", &ChannelGains::h22}, {"h32", &ChannelGains::h32}};
    for (const auto& [name, member] : links) {
        const double m = model.gains.*member;
        out += std::string(name) + ',' + format_number(m) + ',';
        if (cfg.gain_override) {
            const double o = (*cfg.gain_override).*member;
            out += format_number(o) + ',' + format_number(m / o);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string design_csv(const ExperimentConfig& cfg) {
    const auto gains = cfg.effective_gains();
    const auto set = design_constellation(cfg.eta, gains, cfg.sweep.target_power);
    const auto peaks = peak_powers(set);
    const auto gap_raw = verify_gap_condition(set.raw, gains);
    const auto gap_tx = verify_gap_condition(set.tx, gains);
    const auto sic_raw = verify_center_sic_condition(set.raw);
    const auto sic_tx = verify_center_sic_condition(set.tx);

    std::string out = csv_preamble(cfg, "constellation design");
    out += "# edge-user condition " + std::string(gap_tx.satisfied ? "satisfied" : "VIOLATED") +
           "; center-user SIC condition " + std::string(sic_tx.satisfied ? "satisfied" : "VIOLATED") + "\n";
    out += "kind,cell,user,index,raw,value\n";
    auto row = [&out](std::string_view kind, std::string cell, std::string user, std::string index,
                      std::string raw, std::string value) {
        out += std::string(kind) + ',' + cell + ',' + user + ',' + index + ',' + raw + ',' + value + '\n';
    };
    for (int c = 0; c < 2; ++c) {
        const std::string cell = std::to_string(c + 1);
        const std::string center_user = c == 0 ? "1" : "3";
        const auto& raw = set.raw[c];
        const auto& tx = set.tx[c];
        for (std::size_t k = 0; k < raw.center.size(); ++k) {
            row("level", cell, center_user, std::to_string(k + 1), format_number(raw.center[k]), format_number(tx.center[k]));
        }
        for (std::size_t k = 0; k < raw.edge.size(); ++k) {
            row("level", cell, "2", std::to_string(k + 1), format_number(raw.edge[k]), format_number(tx.edge[k]));
        }
        row("spacing", cell, center_user, "", format_number(spacing(raw.center)), format_number(spacing(tx.center)));
        row("spacing", cell, "2", "", format_number(spacing(raw.edge)), format_number(spacing(tx.edge)));
        row("scale", cell, "", "", "", format_number(set.scale[c]));
        row("peak_power", cell, "", "", "", format_number(c == 0 ? peaks.tx1 : peaks.tx2));
        row("sic_margin", cell, center_user, "", format_number(sic_raw.margins[c]), format_number(sic_tx.margins[c]));
    }
    for (std::size_t k = 0; k < gap_tx.margins.size(); ++k) {
        row("gap_margin", "", "2", std::to_string(k + 1), format_number(gap_raw.margins[k]),
            format_number(gap_tx.margins[k]));
    }
    row("target_power", "", "", "", "", format_number(set.target_power));
    return out;
}

std::string complexity_csv(const SpectralEfficiencies& eta) {
    std::ostringstream out;
    out << "# metric evaluations per channel use, eta = " << eta.u1 << "," << eta.u2 << "," << eta.u3 << "\n";
    out << "scheme,per_channel_use,cell_edge\n";
    for (Scheme s : {Scheme::noma_sic, Scheme::noma_jml, Scheme::oma}) {
        const auto c = complexity_counts(eta, s);
        out << to_string(s) << ',' << c.per_channel_use << ',' << c.cell_edge << '\n';
    }
    return out.str();
}

std::string analytic_csv(const ExperimentConfig& cfg) {
    const auto gains = cfg.effective_gains();
    const auto set = design_constellation(cfg.eta, gains, cfg.sweep.target_power);
    std::string out = csv_preamble(cfg, "closed-form SER: user 2 exact, users 1 and 3 lower bounds");
    out += "snr_db,user,analytic\n";
    for (double snr : cfg.sweep.snr_db) {
        const double sigma = sigma_from_snr(snr, cfg.sweep.target_power);
        const std::string s = format_number(snr);
        out += s + ",1," + format_number(ser_center_lower_bound(set, gains, sigma, CenterUser::u1)) + '\n';
        out += s + ",2," + format_number(ser_u2_analytic(set, gains, sigma)) + '\n';
        out += s + ",3," + format_number(ser_center_lower_bound(set, gains, sigma, CenterUser::u3)) + '\n';
    }
    return out;
}

std::string trace_frame(const ExperimentConfig& cfg, double snr_db) {
    const auto gains = cfg.effective_gains();
    const auto set = design_constellation(cfg.eta, gains, cfg.sweep.target_power);
    const auto oma = OmaConfig::matching(cfg.eta, cfg.sweep.target_power);
    const double sigma = sigma_from_snr(snr_db, cfg.sweep.target_power);
    const CounterRng rng(cfg.sweep.seed, 0, 0);

    const auto sent = draw_symbols(set.eta, rng);
    const auto clean = superpose_transmit(sent, set, gains);
    const auto y = awgn_sample(clean, NoiseModel::uniform(sigma), rng);
    const auto d1 = decode_center_sic(y.y1, gains.h11, set, CenterUser::u1);
    const auto d3 = decode_center_sic(y.y3, gains.h32, set, CenterUser::u3);
    const auto sic = decode_u2_sic(y.y2, gains, set);
    const auto jml = decode_u2_jml(y.y2, gains, set);
    const auto frame = oma_round(draw_oma_symbols(oma, rng), gains, NoiseModel::uniform(sigma), oma, rng);

    // Symbol indices are printed 1-based.
    std::ostringstream out;
    out.precision(17);
    out << "# trace: seed " << cfg.sweep.seed << ", snr_db " << format_number(snr_db) << ", sigma "
        << format_number(sigma) << "\n";
    out << "noma sent u1=" << sent.u1 + 1 << " u2=" << sent.u2 + 1 << " u3=" << sent.u3 + 1 << "\n";
    out << "noma noiseless y1=" << clean.y1 << " y2=" << clean.y2 << " y3=" << clean.y3 << "\n";
    out << "noma received y1=" << y.y1 << " y2=" << y.y2 << " y3=" << y.y3 << "\n";
    out << "U1 sic: u2_hat=" << d1.edge + 1 << " u1_hat=" << d1.own + 1 << " evaluations=" << d1.evaluations << "\n";
    out << "U3 sic: u2_hat=" << d3.edge + 1 << " u3_hat=" << d3.own + 1 << " evaluations=" << d3.evaluations << "\n";
    out << "U2 sic: u2_hat=" << sic.u2 + 1 << " evaluations=" << sic.evaluations << "\n";
    out << "U2 jml: u2_hat=" << jml.u2 + 1 << " evaluations=" << jml.evaluations << "\n";
    out << "oma sent u1=" << frame.sent.u1 + 1 << " u2=" << frame.sent.u2 + 1 << " u3=" << frame.sent.u3 + 1 << "\n";
    out << "oma received y1=" << frame.y1 << " y3=" << frame.y3 << " y2=" << frame.y2 << "\n";
    out << "oma decided u1=" << frame.decided.u1 + 1 << " u2=" << frame.decided.u2 + 1
        << " u3=" << frame.decided.u3 + 1 << " evaluations=" << frame.evaluations << "\n";
    return out.str();
}

SerCurve simulate(const ExperimentConfig& cfg, const RunOptions& options) {
    const auto gains = cfg.effective_gains();
    const auto set = design_constellation(cfg.eta, gains, cfg.sweep.target_power);
    const auto oma = OmaConfig::matching(cfg.eta, cfg.sweep.target_power);
    return run_sweep(cfg.sweep, set, gains, oma, options);
}

std::string run_experiment(Experiment experiment, const ExperimentConfig& cfg, const RunOptions& options) {
    switch (experiment) {
    case Experiment::gains: return gains_csv(cfg);
    case Experiment::design: return design_csv(cfg);
    case Experiment::complexity: return complexity_csv(cfg.eta);
    case Experiment::fig2: {
        auto c = cfg;
        c.sweep.schemes = {Scheme::noma_sic};
        const auto curve = filter(simulate(c, options), [](const SerRow& r) { return r.user != User::average; });
        return ser_csv(curve, c, "per-user SER, NOMA with SIC decoding: simulation and closed form");
    }
    case Experiment::fig3: {
        auto c = cfg;
        c.sweep.schemes = {Scheme::noma_sic, Scheme::noma_jml, Scheme::oma};
        const auto curve = filter(simulate(c, options), [](const SerRow& r) { return r.user == User::average; });
        return ser_csv(curve, c, kBaselineNote);
    }
    case Experiment::fig4: {
        auto c = cfg;
        c.sweep.schemes = {Scheme::noma_sic, Scheme::noma_jml, Scheme::oma};
        const auto curve = filter(simulate(c, options), [](const SerRow& r) { return r.user == User::u2; });
        return ser_csv(curve, c, kBaselineNote);
    }
    }
    throw InvalidParameter("unknown experiment");
}

} // namespace vlcnoma
