#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace vlcnoma {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
// pure function of (counter, key), so any trial can be regenerated without
// touching the state of any other trial.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr int kRounds = 10;

    static constexpr Counter generate(Counter ctr, Key key) noexcept {
        for (int round = 0; round < kRounds; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// Independent random blocks addressed by (seed, sweep point, trial, slot).
// Every consumer of randomness in a trial owns a distinct slot, so results
// do not depend on evaluation order or on how trials are split across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint32_t point, std::uint64_t trial) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_(trial),
          point_(point) {}

    Philox4x32::Counter block(std::uint32_t slot) const noexcept {
        return Philox4x32::generate({static_cast<std::uint32_t>(trial_),
                                     static_cast<std::uint32_t>(trial_ >> 32), point_, slot},
                                    key_);
    }

    // Two independent N(0,1) draws from one block (Box-Muller on 53-bit uniforms).
    std::array<double, 2> gaussian_pair(std::uint32_t slot) const noexcept {
        const auto b = block(slot);
        const std::uint64_t a = (std::uint64_t{b[0]} << 32) | b[1];
        const std::uint64_t c = (std::uint64_t{b[2]} << 32) | b[3];
        constexpr double kUnit = 0x1.0p-53;
        const double u = (static_cast<double>(a >> 11) + 1.0) * kUnit;  // (0, 1]
        const double v = static_cast<double>(c >> 11) * kUnit;          // [0, 1)
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    std::uint64_t trial() const noexcept { return trial_; }
    std::uint32_t point() const noexcept { return point_; }

private:
    Philox4x32::Key key_;
    std::uint64_t trial_;
    std::uint32_t point_;
};

// Slot assignments used by the link simulation.
namespace rng_slot {
inline constexpr std::uint32_t kNomaSymbols = 0;
inline constexpr std::uint32_t kNomaNoise12 = 1;   // n1, n2
inline constexpr std::uint32_t kNomaNoise3 = 2;    // n3 (second half unused)
inline constexpr std::uint32_t kOmaSymbols = 3;
inline constexpr std::uint32_t kOmaCenterNoise = 4;  // slot A: U1, U3
inline constexpr std::uint32_t kOmaEdgeNoise = 5;    // slot B: U2
} // namespace rng_slot

} // namespace vlcnoma
