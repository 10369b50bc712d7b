#pragma once

#include <cstdint>
#include <random>

#include "radiuslab/matrix.hpp"

namespace radiuslab {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for (base, stream, index); counter-based so trials can be generated in
/// any order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(mix64(base) ^ (stream * 0xd1b54a32d192ed03ULL)) ^ index);
}

/// mt19937_64 with hand-rolled uniform/normal transforms. The std
/// distributions are implementation-defined, these are bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal();

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace radiuslab
