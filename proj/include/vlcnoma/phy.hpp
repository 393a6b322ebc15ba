#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vlcnoma/constellation.hpp"
#include "vlcnoma/optics.hpp"
#include "vlcnoma/philox.hpp"

namespace vlcnoma {

// Zero-based symbol indices; index k selects the (k+1)-th smallest level.
struct SymbolTuple {
    std::uint32_t u1 = 0;
    std::uint32_t u2 = 0;
    std::uint32_t u3 = 0;

    friend bool operator==(const SymbolTuple&, const SymbolTuple&) = default;
};

struct ReceivedSignals {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;
};

struct NoiseModel {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double sigma3 = 0.0;

    static NoiseModel uniform(double sigma) noexcept { return {sigma, sigma, sigma}; }
    void validate() const;
};

ReceivedSignals superpose_transmit(const SymbolTuple& tuple, const ConstellationSet& set,
                                   const ChannelGains& gains);

ReceivedSignals awgn_sample(const ReceivedSignals& noiseless, const NoiseModel& noise,
                            const CounterRng& rng);

// Uniform symbol tuple for one channel use.
SymbolTuple draw_symbols(const SpectralEfficiencies& eta, const CounterRng& rng,
                         std::uint32_t slot = rng_slot::kNomaSymbols);

// Nearest candidate to y among gain * levels[k]; ties go to the lower index.
// Adds one to *evaluations per candidate metric computed.
std::uint32_t nearest_level(double y, double gain, std::span<const double> levels,
                            std::uint32_t* evaluations = nullptr) noexcept;

struct SicDecision {
    std::uint32_t own = 0;   // decoded u1 or u3
    std::uint32_t edge = 0;  // stage-one estimate of u2
    std::uint32_t evaluations = 0;
};

struct EdgeDecision {
    std::uint32_t u2 = 0;
    std::uint32_t evaluations = 0;
};

// Two-stage SIC at a cell-center user: detect U2's level first, subtract it,
// then detect the user's own level. Stage-one errors propagate.
SicDecision decode_center_sic(double y, double gain, const ConstellationSet& set, CenterUser which);

// U2 with U1/U3 treated as noise.
EdgeDecision decode_u2_sic(double y2, const ChannelGains& gains, const ConstellationSet& set);

// U2 by exhaustive joint ML over every (u1, u2, u3).
EdgeDecision decode_u2_jml(double y2, const ChannelGains& gains, const ConstellationSet& set);

// ---------------------------------------------------------------------------
// OMA baseline: U1 and U3 share slot A (one LED each), both LEDs send the same
// M-PAM level to U2 in slot B.

// I_m = 2 * average * m / (M + 1), m = 1..M.
std::vector<double> oma_pam_points(std::uint32_t size, double average_intensity);

struct OmaConfig {
    SpectralEfficiencies eta;  // already doubled relative to NOMA
    double average_intensity = 0.0;
    std::array<std::vector<double>, 3> levels;  // U1, U2, U3

    // OMA matched to a NOMA configuration: doubled bits per user per frame and
    // the per-slot, per-LED mean intensity equal to the NOMA target power.
    static OmaConfig matching(const SpectralEfficiencies& noma_eta, double target_power);
};

struct OmaSymbols {
    std::uint32_t u1 = 0;
    std::uint32_t u2 = 0;
    std::uint32_t u3 = 0;
};

struct OmaFrame {
    OmaSymbols sent;
    OmaSymbols decided;
    double y1 = 0.0;  // slot A at U1
    double y3 = 0.0;  // slot A at U3
    double y2 = 0.0;  // slot B at U2
    std::uint32_t evaluations = 0;  // per two-slot frame
};

OmaSymbols draw_oma_symbols(const OmaConfig& config, const CounterRng& rng);

OmaFrame oma_round(const OmaSymbols& symbols, const ChannelGains& gains, const NoiseModel& noise,
                   const OmaConfig& config, const CounterRng& rng);

} // namespace vlcnoma
