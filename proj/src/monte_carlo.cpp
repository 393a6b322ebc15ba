#include "vlcnoma/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

double sigma_from_snr(double snr_db, double target_power) {
    if (!(target_power > 0.0)) throw InvalidParameter("target power must be positive");
    return std::sqrt(target_power / std::pow(10.0, snr_db / 10.0));
}

double snr_from_sigma(double sigma, double target_power) {
    return 10.0 * std::log10(target_power / (sigma * sigma));
}

SerEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials, double z) {
    SerEstimate e;
    e.errors = errors;
    e.trials = trials;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.ser = p;
    // Clamp rounding so ci_low <= ser <= ci_high holds bit-exactly.
    e.ci_low = std::clamp(center - half, 0.0, p);
    e.ci_high = std::clamp(center + half, p, 1.0);
    return e;
}

std::string_view to_string(User user) noexcept {
    switch (user) {
    case User::u1: return "1";
    case User::u2: return "2";
    case User::u3: return "3";
    case User::average: return "avg";
    }
    return "?";
}

const SerRow* SerCurve::find(double snr_db, User user, Scheme scheme) const noexcept {
    for (const auto& row : rows) {
        if (row.snr_db == snr_db && row.user == user && row.scheme == scheme) return &row;
    }
    return nullptr;
}

void SweepConfig::validate() const {
    if (snr_db.empty()) throw InvalidParameter("SNR list must not be empty");
    if (snr_db.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidParameter("too many SNR points");
    }
    for (double s : snr_db) {
        if (!std::isfinite(s)) throw InvalidParameter("SNR values must be finite");
    }
    if (trials_per_point < 1) throw InvalidParameter("trials per point must be at least 1");
    // Counts must stay exact in double arithmetic.
    if (trials_per_point > (std::uint64_t{1} << 53)) {
        throw InvalidParameter("trials per point exceeds 2^53");
    }
    if (!(target_power > 0.0) || !std::isfinite(target_power)) {
        throw InvalidParameter("target power must be positive and finite");
    }
    if (schemes.empty()) throw InvalidParameter("at least one scheme is required");
}

std::vector<double> snr_range(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
        throw InvalidParameter("SNR range needs start <= stop and a positive step");
    }
    const auto count = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw InvalidParameter("SNR range has too many points");
    std::vector<double> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("VLCNOMA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

PointTally& PointTally::operator+=(const PointTally& other) {
    trials += other.trials;
    for (std::size_t s = 0; s < errors.size(); ++s) {
        for (std::size_t u = 0; u < errors[s].size(); ++u) errors[s][u] += other.errors[s][u];
    }
    return *this;
}

namespace {

bool wants(const SweepConfig& config, Scheme s) {
    return std::find(config.schemes.begin(), config.schemes.end(), s) != config.schemes.end();
}

// Runs task(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n && !failed; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::optional<double> analytic_value(const ConstellationSet& set, const ChannelGains& gains,
                                     const OmaConfig& oma, double sigma, User user, Scheme scheme) {
    try {
        if (scheme == Scheme::oma) {
            switch (user) {
            case User::u1: return pam_ser(static_cast<std::uint32_t>(oma.levels[0].size()), spacing(oma.levels[0]), gains.h11, sigma);
            case User::u2: return pam_ser(static_cast<std::uint32_t>(oma.levels[1].size()), spacing(oma.levels[1]), gains.h21 + gains.h22, sigma);
            case User::u3: return pam_ser(static_cast<std::uint32_t>(oma.levels[2].size()), spacing(oma.levels[2]), gains.h32, sigma);
            case User::average: return std::nullopt;
            }
        }
        switch (user) {
        case User::u1: return ser_center_lower_bound(set, gains, sigma, CenterUser::u1);
        case User::u3: return ser_center_lower_bound(set, gains, sigma, CenterUser::u3);
        case User::u2:
            if (scheme == Scheme::noma_sic) return ser_u2_analytic(set, gains, sigma);
            return std::nullopt;
        case User::average: return std::nullopt;
        }
    } catch (const InvalidConstellation&) {
        // Non-uniform designs have no closed form.
    }
    return std::nullopt;
}

} // namespace

PointTally simulate_trials(const SweepConfig& config, const ConstellationSet& set,
                           const ChannelGains& gains, const OmaConfig& oma, std::uint32_t point,
                           double sigma, std::uint64_t first, std::uint64_t count) {
    const bool sic = wants(config, Scheme::noma_sic);
    const bool jml = wants(config, Scheme::noma_jml);
    const bool use_oma = wants(config, Scheme::oma);
    const auto noise = NoiseModel::uniform(sigma);
    constexpr auto kSic = static_cast<std::size_t>(Scheme::noma_sic);
    constexpr auto kJml = static_cast<std::size_t>(Scheme::noma_jml);
    constexpr auto kOma = static_cast<std::size_t>(Scheme::oma);

    PointTally tally;
    tally.trials = count;
    for (std::uint64_t trial = first; trial < first + count; ++trial) {
        const CounterRng rng(config.seed, point, trial);
        if (sic || jml) {
            const auto sent = draw_symbols(set.eta, rng);
            const auto y = awgn_sample(superpose_transmit(sent, set, gains), noise, rng);
            const auto d1 = decode_center_sic(y.y1, gains.h11, set, CenterUser::u1);
            const auto d3 = decode_center_sic(y.y3, gains.h32, set, CenterUser::u3);
            const std::uint64_t e1 = d1.own != sent.u1;
            const std::uint64_t e3 = d3.own != sent.u3;
            if (sic) {
                tally.errors[kSic][0] += e1;
                tally.errors[kSic][1] += decode_u2_sic(y.y2, gains, set).u2 != sent.u2;
                tally.errors[kSic][2] += e3;
            }
            if (jml) {
                tally.errors[kJml][0] += e1;
                tally.errors[kJml][1] += decode_u2_jml(y.y2, gains, set).u2 != sent.u2;
                tally.errors[kJml][2] += e3;
            }
        }
        if (use_oma) {
            const auto frame = oma_round(draw_oma_symbols(oma, rng), gains, noise, oma, rng);
            tally.errors[kOma][0] += frame.decided.u1 != frame.sent.u1;
            tally.errors[kOma][1] += frame.decided.u2 != frame.sent.u2;
            tally.errors[kOma][2] += frame.decided.u3 != frame.sent.u3;
        }
    }
    return tally;
}

SerCurve run_sweep(const SweepConfig& config, const ConstellationSet& set, const ChannelGains& gains,
                   const OmaConfig& oma, const RunOptions& options) {
    config.validate();
    if (options.batch_size < 1) throw InvalidParameter("batch size must be positive");
    const unsigned workers = options.workers > 0 ? options.workers : default_worker_count();
    const std::uint64_t batch = options.batch_size;
    const std::uint64_t n_batches = (config.trials_per_point + batch - 1) / batch;
    // Early stopping inspects batches in index order; the wave size is fixed so
    // the stopping point never depends on the worker count.
    constexpr std::uint64_t kWave = 64;

    SerCurve curve;
    for (std::uint32_t point = 0; point < config.snr_db.size(); ++point) {
        const double snr = config.snr_db[point];
        const double sigma = sigma_from_snr(snr, config.target_power);

        PointTally total;
        bool done = false;
        for (std::uint64_t wave_start = 0; wave_start < n_batches && !done; wave_start += kWave) {
            const std::uint64_t wave_len =
                config.min_errors > 0 ? std::min(kWave, n_batches - wave_start) : n_batches - wave_start;
            std::vector<PointTally> partial(wave_len);
            parallel_for(wave_len, workers, [&](std::size_t i) {
                const std::uint64_t b = wave_start + i;
                const std::uint64_t first = b * batch;
                const std::uint64_t count = std::min(batch, config.trials_per_point - first);
                partial[i] = simulate_trials(config, set, gains, oma, point, sigma, first, count);
            });
            for (const auto& p : partial) {
                total += p;
                if (config.min_errors > 0) {
                    std::uint64_t slowest = std::numeric_limits<std::uint64_t>::max();
                    for (Scheme s : config.schemes) {
                        for (User u : {User::u1, User::u2, User::u3}) slowest = std::min(slowest, total.count(s, u));
                    }
                    if (slowest >= config.min_errors) {
                        done = true;
                        break;
                    }
                }
            }
            if (config.min_errors == 0) done = true;
        }

        std::vector<Scheme> schemes = config.schemes;
        std::sort(schemes.begin(), schemes.end());
        schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
        for (Scheme s : schemes) {
            std::uint64_t pooled = 0;
            for (User u : {User::u1, User::u2, User::u3}) {
                const auto errors = total.count(s, u);
                pooled += errors;
                curve.rows.push_back({snr, u, s, wilson_estimate(errors, total.trials),
                                      analytic_value(set, gains, oma, sigma, u, s)});
            }
            // Equal trial counts per user, so pooled errors over 3n symbols is
            // the unweighted mean of the three SERs.
            curve.rows.push_back({snr, User::average, s, wilson_estimate(pooled, 3 * total.trials),
                                  std::nullopt});
        }
    }
    std::stable_sort(curve.rows.begin(), curve.rows.end(), [](const SerRow& a, const SerRow& b) {
        if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
        if (a.user != b.user) return a.user < b.user;
        return a.scheme < b.scheme;
    });
    return curve;
}

} // namespace vlcnoma
