#pragma once

#include <cstdint>
#include <random>

namespace a2dcrf {

// Seeded generator with fixed-width helpers so generated instances are
// byte-stable across standard library implementations.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    std::uint64_t next() { return gen(); }
    int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform_real() < p; }
};

}  // namespace a2dcrf
