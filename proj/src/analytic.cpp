#include "vlcnoma/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::noma_sic: return "noma-sic";
    case Scheme::noma_jml: return "noma-jml";
    case Scheme::oma: return "oma";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::noma_sic, Scheme::noma_jml, Scheme::oma}) {
        if (to_string(s) == name) return s;
    }
    throw InvalidParameter("unknown scheme '" + std::string(name) + "' (expected noma-sic, noma-jml or oma)");
}

double q_function(double t) noexcept { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

namespace {

// Q(rho / sigma) with the sigma -> 0 limit taken explicitly.
double tail(double rho, double sigma) noexcept {
    if (sigma > 0.0) return q_function(rho / sigma);
    if (rho > 0.0) return 0.0;
    if (rho < 0.0) return 1.0;
    return 0.5;
}

} // namespace

DecisionBoundaries decision_boundaries(const ConstellationSet& set, const ChannelGains& gains) {
    const auto& c1 = set.cell(Cell::one);
    const auto& c2 = set.cell(Cell::two);
    if (!uniformly_spaced(c1.edge) || !uniformly_spaced(c2.edge)) {
        throw InvalidConstellation("edge-user levels must be uniformly spaced");
    }
    DecisionBoundaries b;
    b.gamma = 0.5 * std::abs(spacing(c1.edge)) * gains.h21 + 0.5 * std::abs(spacing(c2.edge)) * gains.h22;
    b.size_u1 = static_cast<std::uint32_t>(c1.center.size());
    b.size_u3 = static_cast<std::uint32_t>(c2.center.size());
    b.rho_plus.reserve(std::size_t{b.size_u1} * b.size_u3);
    b.rho_minus.reserve(std::size_t{b.size_u1} * b.size_u3);
    for (double p1 : c1.center) {
        for (double p3 : c2.center) {
            const double shift = gains.h21 * p1 + gains.h22 * p3;
            b.rho_plus.push_back(b.gamma - shift);
            b.rho_minus.push_back(b.gamma + shift);
        }
    }
    return b;
}

double ser_u2_analytic(const ConstellationSet& set, const ChannelGains& gains, double sigma2) {
    const auto b = decision_boundaries(set, gains);
    double sum = 0.0;
    for (std::size_t k = 0; k < b.rho_plus.size(); ++k) {
        sum += tail(b.rho_plus[k], sigma2) + tail(b.rho_minus[k], sigma2);
    }
    const double m2 = static_cast<double>(set.eta.size_u2());
    return (1.0 - 1.0 / m2) * sum / static_cast<double>(b.rho_plus.size());
}

double pam_ser(std::uint32_t size, double spacing, double gain, double sigma) {
    const double m = static_cast<double>(size);
    return 2.0 * (1.0 - 1.0 / m) * tail(std::abs(spacing) * gain / 2.0, sigma);
}

double ser_center_lower_bound(const ConstellationSet& set, const ChannelGains& gains, double sigma,
                              CenterUser which) {
    const auto& levels = set.cell(cell_of(which)).center;
    const double gain = which == CenterUser::u1 ? gains.h11 : gains.h32;
    return pam_ser(static_cast<std::uint32_t>(levels.size()), spacing(levels), gain, sigma);
}

ComplexityCounts complexity_counts(const SpectralEfficiencies& eta, Scheme scheme) {
    eta.validate();
    const std::uint64_t m1 = eta.size_u1();
    const std::uint64_t m2 = eta.size_u2();
    const std::uint64_t m3 = eta.size_u3();
    switch (scheme) {
    case Scheme::noma_sic:
        return {(m1 + m2) + m2 + (m2 + m3), m2};
    case Scheme::noma_jml:
        return {(m1 + m2) + m1 * m2 * m3 + (m2 + m3), m1 * m2 * m3};
    case Scheme::oma: {
        // Doubled bits: 2^(2*eta) = m^2 levels, one frame per two channel uses.
        const std::uint64_t frame = m1 * m1 + m2 * m2 + m3 * m3;
        return {frame / 2, (m2 * m2) / 2};
    }
    }
    throw InvalidParameter("unknown scheme");
}

} // namespace vlcnoma
