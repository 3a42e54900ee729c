#ifndef IFM_RNG_HPP
#define IFM_RNG_HPP

#include <cstdint>
#include <random>

namespace ifm {

// Deterministic uniform source.  The explicit 53-bit ladder (rather than
// std::uniform_real_distribution, whose output is implementation-defined)
// keeps sampled runs bit-stable across standard libraries.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return (gen() >> 11) * 0x1.0p-53; }
};

} // namespace ifm

#endif // IFM_RNG_HPP
