#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vlcnoma/optics.hpp"

namespace vlcnoma {

// Bits per channel use for U1 (cell 1 center), U2 (cell edge) and U3 (cell 2 center).
struct SpectralEfficiencies {
    int u1 = 0;
    int u2 = 0;
    int u3 = 0;

    static constexpr int kMaxBits = 16;

    // Throws InvalidParameter unless every entry is in [1, kMaxBits].
    void validate() const;

    std::uint32_t size_u1() const noexcept { return 1u << u1; }
    std::uint32_t size_u2() const noexcept { return 1u << u2; }
    std::uint32_t size_u3() const noexcept { return 1u << u3; }

    SpectralEfficiencies doubled() const noexcept { return {2 * u1, 2 * u2, 2 * u3}; }

    friend bool operator==(const SpectralEfficiencies&, const SpectralEfficiencies&) = default;
};

enum class Cell : std::uint8_t { one = 0, two = 1 };
enum class CenterUser : std::uint8_t { u1, u3 };

constexpr Cell cell_of(CenterUser user) noexcept {
    return user == CenterUser::u1 ? Cell::one : Cell::two;
}
constexpr std::size_t index_of(Cell cell) noexcept { return static_cast<std::size_t>(cell); }

// Intensity levels driven by one LED: its own center user plus its share of U2.
// Index k holds the level for symbol k (zero-based), ascending.
struct CellLevels {
    std::vector<double> center;
    std::vector<double> edge;
};

using CellPair = std::array<CellLevels, 2>;

// Constellation design before power scaling (dimensionless raw units).
struct RawConstellation {
    SpectralEfficiencies eta;
    CellPair cells;
};

struct ConstellationSet {
    SpectralEfficiencies eta;
    CellPair raw;
    CellPair tx;                    // transmitted levels, watts
    std::array<double, 2> scale{};  // watts per raw unit, per cell
    double target_power = 0.0;

    const CellLevels& cell(Cell c) const noexcept { return tx[index_of(c)]; }
    const CellLevels& raw_cell(Cell c) const noexcept { return raw[index_of(c)]; }
};

struct PeakPowers {
    double tx1 = 0.0;
    double tx2 = 0.0;
};

struct GapReport {
    bool satisfied = false;
    // rhs - lhs of the noiseless edge-user condition for every u2 transition.
    std::vector<double> margins;
};

// Levels 1, 2, ..., 2^bits (unit spacing) for a cell-center user.
std::vector<double> center_points(int bits);

// Edge-user levels in both cells. Starts just above the center constellation
// and grows by one interference span plus a unit margin per step.
// Throws InvalidParameter for an infeasible gain ordering or h21 + h22 == 0.
std::array<std::vector<double>, 2> edge_points(const SpectralEfficiencies& eta, const ChannelGains& gains);

RawConstellation design_raw(const SpectralEfficiencies& eta, const ChannelGains& gains);

// Scale each cell so the mean superposed intensity equals target_power.
ConstellationSet normalize(const RawConstellation& raw, double target_power);

// Full design: raw levels followed by normalization.
ConstellationSet design_constellation(const SpectralEfficiencies& eta, const ChannelGains& gains,
                                      double target_power);

PeakPowers peak_powers(const ConstellationSet& set);

// Mean over all (center, edge) symbol pairs of the superposed level in one cell.
double mean_superposed_power(const CellLevels& cell);

// First consecutive gap; throws InvalidConstellation on fewer than two points.
double spacing(std::span<const double> levels);
bool uniformly_spaced(std::span<const double> levels, double rel_tol = 1e-9);

// Relative tolerance used to call an inequality "strict".
inline constexpr double kStrictTolerance = 1e-12;

// Noiseless U2 decodability with U1/U3 treated as interference.
GapReport verify_gap_condition(const CellPair& levels, const ChannelGains& gains);

// Noiseless SIC decodability at U1 and U3: the center user's largest level
// must stay below half the edge spacing in that cell, so stage one never
// jumps to the next edge level. Margins are [cell 1, cell 2].
GapReport verify_center_sic_condition(const CellPair& levels);

} // namespace vlcnoma
