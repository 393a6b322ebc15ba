#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlcnoma/constellation.hpp"
#include "vlcnoma/monte_carlo.hpp"
#include "vlcnoma/optics.hpp"

namespace vlcnoma {

struct ExperimentConfig {
    ScenarioGeometry geometry = reference_geometry();
    OpticalFrontEnd front_end = reference_front_end();
    std::optional<ChannelGains> gain_override;
    SpectralEfficiencies eta{3, 2, 2};
    SweepConfig sweep = default_sweep();
    std::string output;

    // Gains used by the link: the override when present, otherwise the model.
    ChannelGains effective_gains() const;

    // Throws ValidationError subclasses naming the offending setting.
    void validate() const;

    // Reference layout with the published gains as override.
    static ExperimentConfig reference();

    // 100..170 dB in 2 dB steps, 1e5 trials, seed 1, P = 1 W, all schemes.
    static SweepConfig default_sweep();
};

// Flat `key = value` text, '#' starts a comment. Unknown keys are rejected.
// Keys not present keep the reference-scenario defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical `key = value` lines reproducing cfg through parse_config.
std::vector<std::string> config_lines(const ExperimentConfig& cfg);

// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

} // namespace vlcnoma
