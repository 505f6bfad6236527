#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperlab {

// Identity string recorded in run manifests. Any reimplementation that
// wants bit-identical runs must use the same generator and seeding.
inline constexpr std::string_view kGeneratorIdentity =
    "std::mt19937_64 seeded with splitmix64(seed); "
    "bounded ints by rejection on 64-bit draws; reals = (x >> 11) * 2^-53";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random source. The distributions are written out here
// rather than taken from <random> because the standard leaves their
// algorithms unspecified, which would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // Reject the top partial block so every residue is equally likely.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hyperlab
