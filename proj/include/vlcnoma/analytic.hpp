#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vlcnoma/constellation.hpp"
#include "vlcnoma/optics.hpp"

namespace vlcnoma {

enum class Scheme : std::uint8_t { noma_sic, noma_jml, oma };

std::string_view to_string(Scheme scheme) noexcept;
// Throws InvalidParameter for unknown names ("noma-sic", "noma-jml", "oma").
Scheme parse_scheme(std::string_view name);

// Gaussian tail probability, Q(t) = erfc(t / sqrt 2) / 2.
double q_function(double t) noexcept;

// Decision geometry of the U2 detector that treats U1/U3 as noise. The
// threshold distance toward the next level is rho_plus, toward the previous
// level rho_minus; index [u1 * M3 + u3].
struct DecisionBoundaries {
    double gamma = 0.0;
    std::vector<double> rho_plus;
    std::vector<double> rho_minus;
    std::uint32_t size_u1 = 0;
    std::uint32_t size_u3 = 0;

    double plus(std::uint32_t u1, std::uint32_t u3) const { return rho_plus[u1 * size_u3 + u3]; }
    double minus(std::uint32_t u1, std::uint32_t u3) const { return rho_minus[u1 * size_u3 + u3]; }
};

// Throws InvalidConstellation when the edge levels are not uniformly spaced.
DecisionBoundaries decision_boundaries(const ConstellationSet& set, const ChannelGains& gains);

// Exact SER of U2 under the interference-as-noise detector. sigma2 == 0
// returns the noiseless limit (each Q term is 0, 1/2 or 1 by the sign of rho).
double ser_u2_analytic(const ConstellationSet& set, const ChannelGains& gains, double sigma2);

// Lower bound on U1/U3 SER: PAM error probability assuming U2 was removed
// perfectly. Real SIC adds stage-one errors on top.
double ser_center_lower_bound(const ConstellationSet& set, const ChannelGains& gains, double sigma,
                              CenterUser which);

// Exact SER of nearest-level M-PAM with uniform spacing seen through gain.
double pam_ser(std::uint32_t size, double spacing, double gain, double sigma);

struct ComplexityCounts {
    std::uint64_t per_channel_use = 0;  // summed over all three users
    std::uint64_t cell_edge = 0;        // U2 only
};

// Metric evaluations per channel use. For OMA, eta is the NOMA efficiency;
// bits are doubled and one frame spans two channel uses.
ComplexityCounts complexity_counts(const SpectralEfficiencies& eta, Scheme scheme);

} // namespace vlcnoma
