#pragma once

#include <cstdint>
#include <random>

namespace detgen {

// Deterministic across platforms: std::uniform_*_distribution is
// implementation-defined, so draws are derived from raw mt19937_64 output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n) by rejection sampling.
    std::size_t uniform_index(std::size_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    // Uniform in [0, 1).
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

// splitmix64 mix of (master seed, stream index) for independent child streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace detgen
