#include "vlcnoma/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vlcnoma/error.hpp"

namespace vlcnoma {

namespace {

constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

} // namespace

void ScenarioGeometry::validate() const {
    require_finite(room_height, "room_height");
    if (!(room_height > 0.0)) {
        throw InvalidGeometry("room height must be positive");
    }
    for (std::size_t w = 0; w < receiver_height.size(); ++w) {
        const double lw = receiver_height[w];
        if (!(lw >= 0.0 && lw < room_height)) {
            throw InvalidGeometry("receiver height of U" + std::to_string(w + 1) +
                                  " must lie in [0, room height)");
        }
    }
    for (double r : {r11, r21, r22, r32}) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw InvalidGeometry("top-view distances must be finite and non-negative");
        }
    }
    if (!(cell_radius >= 0.0)) {
        throw InvalidGeometry("cell radius must be non-negative");
    }
}

void OpticalFrontEnd::validate() const {
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0)) {
        throw InvalidParameter("semi-angle must lie in (0, 90) degrees");
    }
    if (!(fov_deg > 0.0 && fov_deg <= 90.0)) {
        throw InvalidParameter("field of view must lie in (0, 90] degrees");
    }
    if (!(detector_area > 0.0)) throw InvalidParameter("detector area must be positive");
    if (!(responsivity > 0.0)) throw InvalidParameter("responsivity must be positive");
    if (!(filter_gain > 0.0)) throw InvalidParameter("filter gain must be positive");
    if (!(concentrator_index >= 1.0)) {
        throw InvalidParameter("concentrator refractive index must be >= 1");
    }
    for (double v : {detector_area, responsivity, filter_gain, concentrator_index}) {
        require_finite(v, "front-end parameter");
    }
}

std::optional<std::string> ChannelGains::ordering_diagnostic() const {
    std::ostringstream out;
    if (!(h11 > h21)) out << "h11 (" << h11 << ") <= h21 (" << h21 << ")";
    if (!(h32 > h22)) {
        if (out.tellp() > 0) out << "; ";
        out << "h32 (" << h32 << ") <= h22 (" << h22 << ")";
    }
    if (out.tellp() == 0) return std::nullopt;
    return "infeasible NOMA ordering: " + out.str();
}

void require_noma_ordering(const ChannelGains& gains) {
    if (auto why = gains.ordering_diagnostic()) throw InvalidParameter(*why);
}

double lambertian_order(double semi_angle_deg) {
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0)) {
        throw InvalidParameter("semi-angle must lie in (0, 90) degrees");
    }
    // ln(cos x) = log1p(-2 sin^2(x/2)) keeps precision for narrow beams.
    const double half = std::sin(deg_to_rad(semi_angle_deg) / 2.0);
    const double ln_cos = std::log1p(-2.0 * half * half);
    return -std::numbers::ln2 / ln_cos;
}

LinkGeometry link_geometry(double top_view_distance, double room_height, double receiver_height) {
    if (!(room_height > receiver_height) || !(receiver_height >= 0.0)) {
        throw InvalidGeometry("receiver must sit below the ceiling: need L > L_w >= 0");
    }
    if (!(top_view_distance >= 0.0)) {
        throw InvalidGeometry("top-view distance must be non-negative");
    }
    const double vertical = room_height - receiver_height;
    const double d = std::hypot(top_view_distance, vertical);
    const double c = vertical / d;
    return {d, c, c};
}

double concentrator_gain(double incidence_deg, double fov_deg, double refractive_index) {
    if (incidence_deg > fov_deg) return 0.0;
    const double s = std::sin(deg_to_rad(fov_deg));
    return refractive_index * refractive_index / (s * s);
}

double dc_gain(const OpticalFrontEnd& fe, const LinkGeometry& link) {
    const double incidence_deg = std::acos(std::min(1.0, link.cos_incidence)) * 180.0 / std::numbers::pi;
    const double g = concentrator_gain(incidence_deg, fe.fov_deg, fe.concentrator_index);
    if (g == 0.0) return 0.0;
    const double order = lambertian_order(fe.semi_angle_deg);
    return (order + 1.0) * fe.detector_area * fe.responsivity * std::pow(link.cos_emission, order) *
           fe.filter_gain * g * link.cos_incidence /
           (2.0 * std::numbers::pi * link.distance * link.distance);
}

double dc_gain(const OpticalFrontEnd& front_end, double top_view_distance, double room_height,
               double receiver_height) {
    return dc_gain(front_end, link_geometry(top_view_distance, room_height, receiver_height));
}

GainMatrix gain_matrix(const ScenarioGeometry& geometry, const OpticalFrontEnd& front_end) {
    geometry.validate();
    front_end.validate();
    const double L = geometry.room_height;
    const auto& lw = geometry.receiver_height;
    GainMatrix out;
    out.gains.h11 = dc_gain(front_end, geometry.r11, L, lw[0]);
    out.gains.h21 = dc_gain(front_end, geometry.r21, L, lw[1]);
    out.gains.h22 = dc_gain(front_end, geometry.r22, L, lw[1]);
    out.gains.h32 = dc_gain(front_end, geometry.r32, L, lw[2]);
    out.diagnostic = out.gains.ordering_diagnostic();
    return out;
}

GainMatrix gain_matrix(const ChannelGains& override_gains) {
    for (double h : {override_gains.h11, override_gains.h21, override_gains.h22, override_gains.h32}) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
            throw InvalidParameter("channel gains must be finite and non-negative");
        }
    }
    return {override_gains, true, override_gains.ordering_diagnostic()};
}

ScenarioGeometry reference_geometry() {
    ScenarioGeometry g;
    g.room_height = 4.0;
    g.cell_radius = 3.6;
    g.receiver_height = {0.5, 0.5, 1.0};
    g.r11 = 0.4885;
    g.r21 = 3.2880;
    g.r22 = 3.4670;
    g.r32 = 0.3030;
    return g;
}

OpticalFrontEnd reference_front_end() {
    OpticalFrontEnd fe;
    fe.semi_angle_deg = 60.0;
    fe.detector_area = 1e-4;
    fe.responsivity = 0.4;
    fe.filter_gain = 1.0;
    fe.fov_deg = 60.0;
    fe.concentrator_index = 1.5;
    return fe;
}

ChannelGains reference_gains() { return {2.5892e-6, 7.8573e-7, 6.8573e-7, 3.5892e-6}; }

} // namespace vlcnoma
