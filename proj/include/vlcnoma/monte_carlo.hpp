#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "vlcnoma/analytic.hpp"
#include "vlcnoma/constellation.hpp"
#include "vlcnoma/optics.hpp"
#include "vlcnoma/phy.hpp"

namespace vlcnoma {

// Transmit SNR = 10 log10(P / sigma^2).
double sigma_from_snr(double snr_db, double target_power);
double snr_from_sigma(double sigma, double target_power);

inline constexpr double kZ95 = 1.959963984540054;

struct SerEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double ser = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
};

// Wilson score interval; z = kZ95 gives the 95% interval.
SerEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials, double z = kZ95);

enum class User : std::uint8_t { u1 = 1, u2 = 2, u3 = 3, average = 4 };

std::string_view to_string(User user) noexcept;

struct SerRow {
    double snr_db = 0.0;
    User user = User::u1;
    Scheme scheme = Scheme::noma_sic;
    SerEstimate estimate;
    std::optional<double> analytic;  // exact value or lower bound, when one exists
};

struct SerCurve {
    std::vector<SerRow> rows;  // sorted by (snr_db, user, scheme)

    const SerRow* find(double snr_db, User user, Scheme scheme) const noexcept;
};

struct SweepConfig {
    std::vector<double> snr_db;
    std::uint64_t trials_per_point = 100000;
    std::uint64_t seed = 1;
    double target_power = 1.0;
    std::vector<Scheme> schemes{Scheme::noma_sic, Scheme::noma_jml, Scheme::oma};
    std::uint64_t min_errors = 0;  // 0 disables early stopping

    // Throws InvalidParameter.
    void validate() const;
};

// SNR grid start, start+step, ... up to and including stop (within 1e-9 * step).
std::vector<double> snr_range(double start, double stop, double step);

struct RunOptions {
    unsigned workers = 0;  // 0: VLCNOMA_THREADS or hardware concurrency
    std::uint64_t batch_size = 4096;
};

// Worker count from VLCNOMA_THREADS, falling back to hardware concurrency.
unsigned default_worker_count();

// Error counts for one (scheme, user) cell of a sweep point, before analytics.
struct PointTally {
    std::uint64_t trials = 0;
    std::array<std::array<std::uint64_t, 3>, 3> errors{};  // [scheme][user-1]

    std::uint64_t count(Scheme s, User u) const {
        return errors[static_cast<std::size_t>(s)][static_cast<std::size_t>(u) - 1];
    }
    PointTally& operator+=(const PointTally& other);
};

// Simulate trials [first, first + count) of sweep point `point` at noise sigma.
PointTally simulate_trials(const SweepConfig& config, const ConstellationSet& set,
                           const ChannelGains& gains, const OmaConfig& oma, std::uint32_t point,
                           double sigma, std::uint64_t first, std::uint64_t count);

SerCurve run_sweep(const SweepConfig& config, const ConstellationSet& set, const ChannelGains& gains,
                   const OmaConfig& oma, const RunOptions& options = {});

} // namespace vlcnoma
