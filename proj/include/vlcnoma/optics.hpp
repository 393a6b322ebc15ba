#pragma once

#include <array>
#include <optional>
#include <string>

namespace vlcnoma {

// Room layout for two LED cells serving U1 (cell 1), U2 (edge) and U3 (cell 2).
// Distances are meters; r_wi is the top-view distance from Tx i to user w.
struct ScenarioGeometry {
    double room_height = 0.0;
    double cell_radius = 0.0;
    std::array<double, 3> receiver_height{};  // L_1, L_2, L_3 above the floor
    double r11 = 0.0;
    double r21 = 0.0;
    double r22 = 0.0;
    double r32 = 0.0;

    // Throws InvalidGeometry.
    void validate() const;
};

// LED and photodiode parameters. Angles are in degrees.
struct OpticalFrontEnd {
    double semi_angle_deg = 0.0;
    double detector_area = 0.0;   // m^2
    double responsivity = 0.0;    // A/W
    double filter_gain = 0.0;
    double fov_deg = 0.0;
    double concentrator_index = 0.0;

    // Throws InvalidParameter.
    void validate() const;
};

struct ChannelGains {
    double h11 = 0.0;
    double h21 = 0.0;
    double h22 = 0.0;
    double h32 = 0.0;

    // Cell-center users must see their own LED better than the edge user does.
    bool noma_ordered() const noexcept { return h11 > h21 && h32 > h22; }

    // Empty when the ordering holds, otherwise a human-readable reason.
    std::optional<std::string> ordering_diagnostic() const;
};

// Throws InvalidParameter naming the violated ordering.
void require_noma_ordering(const ChannelGains& gains);

struct LinkGeometry {
    double distance = 0.0;
    double cos_emission = 0.0;   // cos(phi), LED pointing down
    double cos_incidence = 0.0;  // cos(psi), PD pointing up
};

struct GainMatrix {
    ChannelGains gains;
    bool overridden = false;
    std::optional<std::string> diagnostic;  // set when the NOMA ordering fails
};

double lambertian_order(double semi_angle_deg);

LinkGeometry link_geometry(double top_view_distance, double room_height, double receiver_height);

// Non-imaging concentrator: n^2 / sin^2(fov) inside the field of view, zero outside.
double concentrator_gain(double incidence_deg, double fov_deg, double refractive_index);

// Line-of-sight DC gain including the PD responsivity.
double dc_gain(const OpticalFrontEnd& front_end, const LinkGeometry& link);
double dc_gain(const OpticalFrontEnd& front_end, double top_view_distance, double room_height,
               double receiver_height);

GainMatrix gain_matrix(const ScenarioGeometry& geometry, const OpticalFrontEnd& front_end);
GainMatrix gain_matrix(const ChannelGains& override_gains);

// Reference indoor layout and front end used throughout the examples.
ScenarioGeometry reference_geometry();
OpticalFrontEnd reference_front_end();
// Published gains for the reference layout; experiments default to these.
ChannelGains reference_gains();

} // namespace vlcnoma
