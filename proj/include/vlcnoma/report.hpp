#pragma once

#include <string>
#include <string_view>

#include "vlcnoma/config.hpp"
#include "vlcnoma/monte_carlo.hpp"

namespace vlcnoma {

enum class Experiment { fig2, fig3, fig4, gains, design, complexity };

// Throws InvalidParameter for unknown names.
Experiment parse_experiment(std::string_view name);
std::string_view to_string(Experiment experiment) noexcept;

inline constexpr std::string_view kSerHeader = "snr_db,user,scheme,trials,errors,ser,ci_low,ci_high,analytic";

// Config echo as '# ' comment lines, one per key; the output path is left out.
std::string config_comment(const ExperimentConfig& cfg);

// SER table in the fixed column layout; rows are written in curve order.
std::string ser_csv(const SerCurve& curve, const ExperimentConfig& cfg, std::string_view note = {});

// Modelled vs configured gains, with model/override ratios.
std::string gains_csv(const ExperimentConfig& cfg);

// Raw and transmitted levels per cell and user, spacings, scale factors,
// peak powers and the noiseless decodability margins.
std::string design_csv(const ExperimentConfig& cfg);

// Metric evaluations per channel use for each scheme.
std::string complexity_csv(const SpectralEfficiencies& eta);

// Closed-form values per SNR: U2 exact SER, U1/U3 lower bounds.
std::string analytic_csv(const ExperimentConfig& cfg);

// One noisy NOMA channel use and one OMA frame: received values and decisions.
std::string trace_frame(const ExperimentConfig& cfg, double snr_db);

SerCurve simulate(const ExperimentConfig& cfg, const RunOptions& options = {});

std::string run_experiment(Experiment experiment, const ExperimentConfig& cfg,
                           const RunOptions& options = {});

} // namespace vlcnoma
