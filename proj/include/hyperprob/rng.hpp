#pragma once

#include <cstdint>

namespace hyperprob {

__extension__ using uint128 = unsigned __int128;

/// splitmix64. Same seed, same stream on every platform; the standard
/// library distributions are not used anywhere so draws stay portable too.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in [0, n); n > 0. Multiply-shift keeps it branch-free; the
    /// bias is below 2^-32 for the small n used here.
    constexpr std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<uint128>(next()) * n) >> 64);
    }

    constexpr bool chance(double p) { return uniform() < p; }

    /// Independent child stream, e.g. one per check.
    constexpr Rng fork(std::uint64_t salt) const {
        Rng mixer(state_ ^ (salt * 0xd1342543de82ef95ULL));
        return Rng(mixer.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace hyperprob
