#include "vlcnoma/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

void SpectralEfficiencies::validate() const {
    for (int bits : {u1, u2, u3}) {
        if (bits < 1 || bits > kMaxBits) {
            throw InvalidParameter("spectral efficiency must be an integer in [1, " +
                                   std::to_string(kMaxBits) + "] bpcu, got " + std::to_string(bits));
        }
    }
}

std::vector<double> center_points(int bits) {
    if (bits < 1 || bits > SpectralEfficiencies::kMaxBits) {
        throw InvalidParameter("spectral efficiency must be at least 1 bpcu");
    }
    std::vector<double> levels(std::size_t{1} << bits);
    std::iota(levels.begin(), levels.end(), 1.0);
    return levels;
}

std::array<std::vector<double>, 2> edge_points(const SpectralEfficiencies& eta, const ChannelGains& gains) {
    eta.validate();
    require_noma_ordering(gains);
    if (!(gains.h21 + gains.h22 > 0.0)) {
        throw InvalidParameter("edge user has zero combined channel gain");
    }
    const double top1 = static_cast<double>(eta.size_u1());
    const double top3 = static_cast<double>(eta.size_u3());

    // Each step must lift the received edge level by twice the largest
    // interference U1 and U3 can add at U2: h21*step1 + h22*step3 must equal
    // 2*top1*h21 + 2*top3*h22. Give each cell the increment covering its own
    // center user, which also keeps SIC at U1 and U3 noiseless-exact.
    const double step1 = 2.0 * top1;
    const double step3 = 2.0 * top3;

    const std::uint32_t m2 = eta.size_u2();
    std::array<std::vector<double>, 2> edge;
    edge[0].reserve(m2);
    edge[1].reserve(m2);
    edge[0].push_back(top1 + 1.0);
    edge[1].push_back(top3 + 1.0);
    for (std::uint32_t u = 0; u + 1 < m2; ++u) {
        // Solve the step equation, then add the unit margin for strictness.
        edge[0].push_back(edge[0][u] + step1 + 1.0);
        edge[1].push_back(edge[1][u] + step3 + 1.0);
    }
    return edge;
}

RawConstellation design_raw(const SpectralEfficiencies& eta, const ChannelGains& gains) {
    auto edge = edge_points(eta, gains);
    RawConstellation raw;
    raw.eta = eta;
    raw.cells[0] = {center_points(eta.u1), std::move(edge[0])};
    raw.cells[1] = {center_points(eta.u3), std::move(edge[1])};
    return raw;
}

double mean_superposed_power(const CellLevels& cell) {
    if (cell.center.empty() || cell.edge.empty()) {
        throw InvalidConstellation("cell has no constellation points");
    }
    // mean over pairs of (c + e) = mean(c) + mean(e)
    const double sc = std::accumulate(cell.center.begin(), cell.center.end(), 0.0);
    const double se = std::accumulate(cell.edge.begin(), cell.edge.end(), 0.0);
    return sc / static_cast<double>(cell.center.size()) + se / static_cast<double>(cell.edge.size());
}

ConstellationSet normalize(const RawConstellation& raw, double target_power) {
    if (!(target_power > 0.0) || !std::isfinite(target_power)) {
        throw InvalidParameter("target power must be positive and finite");
    }
    ConstellationSet set;
    set.eta = raw.eta;
    set.raw = raw.cells;
    set.target_power = target_power;
    for (std::size_t c = 0; c < 2; ++c) {
        const double mean = mean_superposed_power(raw.cells[c]);
        if (!(mean > 0.0)) throw InvalidConstellation("raw levels must be positive");
        const double s = target_power / mean;
        set.scale[c] = s;
        auto scaled = [s](const std::vector<double>& v) {
            std::vector<double> out(v.size());
            std::transform(v.begin(), v.end(), out.begin(), [s](double x) { return s * x; });
            return out;
        };
        set.tx[c] = {scaled(raw.cells[c].center), scaled(raw.cells[c].edge)};
    }
    return set;
}

ConstellationSet design_constellation(const SpectralEfficiencies& eta, const ChannelGains& gains,
                                      double target_power) {
    return normalize(design_raw(eta, gains), target_power);
}

PeakPowers peak_powers(const ConstellationSet& set) {
    const auto& c1 = set.cell(Cell::one);
    const auto& c2 = set.cell(Cell::two);
    if (c1.center.empty() || c1.edge.empty() || c2.center.empty() || c2.edge.empty()) {
        throw InvalidConstellation("constellation is not populated");
    }
    return {c1.center.back() + c1.edge.back(), c2.center.back() + c2.edge.back()};
}

double spacing(std::span<const double> levels) {
    if (levels.size() < 2) throw InvalidConstellation("need at least two points to define a spacing");
    return levels[1] - levels[0];
}

bool uniformly_spaced(std::span<const double> levels, double rel_tol) {
    if (levels.size() < 2) return true;
    const double gap = spacing(levels);
    if (!(gap > 0.0)) return false;
    for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
        if (std::abs((levels[k + 1] - levels[k]) - gap) > rel_tol * gap) return false;
    }
    return true;
}

GapReport verify_gap_condition(const CellPair& levels, const ChannelGains& gains) {
    const auto& c1 = levels[0];
    const auto& c2 = levels[1];
    if (c1.edge.size() != c2.edge.size() || c1.center.empty() || c2.center.empty()) {
        throw InvalidConstellation("edge constellations of both cells must have equal size");
    }
    const double interference = *std::max_element(c1.center.begin(), c1.center.end()) * gains.h21 +
                                *std::max_element(c2.center.begin(), c2.center.end()) * gains.h22;
    GapReport report;
    report.satisfied = true;
    for (std::size_t u = 0; u + 1 < c1.edge.size(); ++u) {
        const double here = c1.edge[u] * gains.h21 + c2.edge[u] * gains.h22;
        const double next = c1.edge[u + 1] * gains.h21 + c2.edge[u + 1] * gains.h22;
        const double rhs = next / 2.0;
        const double margin = rhs - (here / 2.0 + interference);
        report.margins.push_back(margin);
        if (!(margin > kStrictTolerance * std::abs(rhs))) report.satisfied = false;
    }
    return report;
}

GapReport verify_center_sic_condition(const CellPair& levels) {
    GapReport report;
    report.satisfied = true;
    for (const auto& cell : levels) {
        if (cell.center.empty()) throw InvalidConstellation("center constellation is empty");
        const double top = *std::max_element(cell.center.begin(), cell.center.end());
        if (cell.edge.size() < 2) {
            report.margins.push_back(0.0);
            continue;
        }
        const double half = spacing(cell.edge) / 2.0;
        const double margin = half - top;
        report.margins.push_back(margin);
        if (!(margin > kStrictTolerance * half) || !uniformly_spaced(cell.edge)) report.satisfied = false;
    }
    return report;
}

} // namespace vlcnoma
