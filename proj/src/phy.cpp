#include "vlcnoma/phy.hpp"

#include <cmath>
#include <string>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

void NoiseModel::validate() const {
    for (double s : {sigma1, sigma2, sigma3}) {
        if (!(s >= 0.0)) throw InvalidParameter("noise standard deviation must be non-negative");
    }
}

ReceivedSignals superpose_transmit(const SymbolTuple& tuple, const ConstellationSet& set,
                                   const ChannelGains& gains) {
    const auto& c1 = set.cell(Cell::one);
    const auto& c2 = set.cell(Cell::two);
    if (tuple.u1 >= c1.center.size() || tuple.u2 >= c1.edge.size() || tuple.u2 >= c2.edge.size() ||
        tuple.u3 >= c2.center.size()) {
        throw InvalidParameter("symbol index out of range");
    }
    const double tx1 = c1.center[tuple.u1] + c1.edge[tuple.u2];
    const double tx2 = c2.edge[tuple.u2] + c2.center[tuple.u3];
    return {tx1 * gains.h11, tx1 * gains.h21 + tx2 * gains.h22, tx2 * gains.h32};
}

ReceivedSignals awgn_sample(const ReceivedSignals& noiseless, const NoiseModel& noise,
                            const CounterRng& rng) {
    const auto n12 = rng.gaussian_pair(rng_slot::kNomaNoise12);
    const auto n3 = rng.gaussian_pair(rng_slot::kNomaNoise3);
    return {noiseless.y1 + noise.sigma1 * n12[0], noiseless.y2 + noise.sigma2 * n12[1],
            noiseless.y3 + noise.sigma3 * n3[0]};
}

SymbolTuple draw_symbols(const SpectralEfficiencies& eta, const CounterRng& rng, std::uint32_t slot) {
    // Sizes are powers of two, so masking keeps the draw exactly uniform.
    const auto b = rng.block(slot);
    return {b[0] & (eta.size_u1() - 1), b[1] & (eta.size_u2() - 1), b[2] & (eta.size_u3() - 1)};
}

std::uint32_t nearest_level(double y, double gain, std::span<const double> levels,
                            std::uint32_t* evaluations) noexcept {
    std::uint32_t best = 0;
    double best_metric = INFINITY;
    for (std::uint32_t k = 0; k < levels.size(); ++k) {
        const double metric = std::abs(y - gain * levels[k]);
        if (evaluations != nullptr) ++*evaluations;
        if (metric < best_metric) {
            best_metric = metric;
            best = k;
        }
    }
    return best;
}

SicDecision decode_center_sic(double y, double gain, const ConstellationSet& set, CenterUser which) {
    const auto& cell = set.cell(cell_of(which));
    SicDecision d;
    d.edge = nearest_level(y, gain, cell.edge, &d.evaluations);
    const double residual = y - gain * cell.edge[d.edge];
    d.own = nearest_level(residual, gain, cell.center, &d.evaluations);
    return d;
}

EdgeDecision decode_u2_sic(double y2, const ChannelGains& gains, const ConstellationSet& set) {
    const auto& e1 = set.cell(Cell::one).edge;
    const auto& e2 = set.cell(Cell::two).edge;
    EdgeDecision d;
    double best_metric = INFINITY;
    for (std::uint32_t k = 0; k < e1.size(); ++k) {
        const double metric = std::abs(y2 - gains.h21 * e1[k] - gains.h22 * e2[k]);
        ++d.evaluations;
        if (metric < best_metric) {
            best_metric = metric;
            d.u2 = k;
        }
    }
    return d;
}

EdgeDecision decode_u2_jml(double y2, const ChannelGains& gains, const ConstellationSet& set) {
    const auto& c1 = set.cell(Cell::one);
    const auto& c2 = set.cell(Cell::two);
    EdgeDecision d;
    double best_metric = INFINITY;
    // Lexicographic (u1, u2, u3) scan; ties keep the first tuple seen.
    for (std::uint32_t u1 = 0; u1 < c1.center.size(); ++u1) {
        for (std::uint32_t u2 = 0; u2 < c1.edge.size(); ++u2) {
            const double tx1 = c1.center[u1] + c1.edge[u2];
            const double partial = tx1 * gains.h21;
            for (std::uint32_t u3 = 0; u3 < c2.center.size(); ++u3) {
                const double tx2 = c2.edge[u2] + c2.center[u3];
                const double metric = std::abs(y2 - (partial + tx2 * gains.h22));
                ++d.evaluations;
                if (metric < best_metric) {
                    best_metric = metric;
                    d.u2 = u2;
                }
            }
        }
    }
    return d;
}

std::vector<double> oma_pam_points(std::uint32_t size, double average_intensity) {
    if (size < 2) throw InvalidParameter("PAM size must be at least 2");
    if (!(average_intensity > 0.0)) throw InvalidParameter("average intensity must be positive");
    std::vector<double> levels(size);
    for (std::uint32_t m = 1; m <= size; ++m) {
        levels[m - 1] = 2.0 * average_intensity * m / (size + 1.0);
    }
    return levels;
}

OmaConfig OmaConfig::matching(const SpectralEfficiencies& noma_eta, double target_power) {
    noma_eta.validate();
    OmaConfig cfg;
    cfg.eta = noma_eta.doubled();
    if (cfg.eta.u1 > SpectralEfficiencies::kMaxBits || cfg.eta.u2 > SpectralEfficiencies::kMaxBits ||
        cfg.eta.u3 > SpectralEfficiencies::kMaxBits) {
        throw InvalidParameter("doubled OMA spectral efficiency exceeds " +
                               std::to_string(SpectralEfficiencies::kMaxBits) + " bpcu");
    }
    cfg.average_intensity = target_power;
    cfg.levels = {oma_pam_points(cfg.eta.size_u1(), target_power),
                  oma_pam_points(cfg.eta.size_u2(), target_power),
                  oma_pam_points(cfg.eta.size_u3(), target_power)};
    return cfg;
}

OmaSymbols draw_oma_symbols(const OmaConfig& config, const CounterRng& rng) {
    const auto s = draw_symbols(config.eta, rng, rng_slot::kOmaSymbols);
    return {s.u1, s.u2, s.u3};
}

OmaFrame oma_round(const OmaSymbols& symbols, const ChannelGains& gains, const NoiseModel& noise,
                   const OmaConfig& config, const CounterRng& rng) {
    const auto& [l1, l2, l3] = config.levels;
    if (symbols.u1 >= l1.size() || symbols.u2 >= l2.size() || symbols.u3 >= l3.size()) {
        throw InvalidParameter("OMA symbol index out of range");
    }
    const auto slot_a = rng.gaussian_pair(rng_slot::kOmaCenterNoise);
    const auto slot_b = rng.gaussian_pair(rng_slot::kOmaEdgeNoise);
    const double edge_gain = gains.h21 + gains.h22;

    OmaFrame f;
    f.sent = symbols;
    f.y1 = l1[symbols.u1] * gains.h11 + noise.sigma1 * slot_a[0];
    f.y3 = l3[symbols.u3] * gains.h32 + noise.sigma3 * slot_a[1];
    f.y2 = l2[symbols.u2] * edge_gain + noise.sigma2 * slot_b[0];
    f.decided.u1 = nearest_level(f.y1, gains.h11, l1, &f.evaluations);
    f.decided.u3 = nearest_level(f.y3, gains.h32, l3, &f.evaluations);
    f.decided.u2 = nearest_level(f.y2, edge_gain, l2, &f.evaluations);
    return f;
}

} // namespace vlcnoma
