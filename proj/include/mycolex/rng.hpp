#ifndef MYCOLEX_RNG_HPP
#define MYCOLEX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mycolex {

// Seedable random source with every conversion step pinned, so a given seed
// yields the same stream on every platform:
//   * raw 64-bit words come from std::mt19937_64 (the generator algorithm is
//     fixed by the C++ standard),
//   * uniform doubles are (word >> 11) * 2^-53, i.e. 53 bits in [0, 1),
//   * normals use the Box-Muller transform (no cached spare, two uniforms
//     per draw).
// std::uniform_real_distribution / std::normal_distribution are avoided on
// purpose: their output sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi], inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + gen_() % (hi - lo + 1);
    }

    double normal(double mean, double stddev) {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    // Normal draw constrained to [min_value, inf): redraws a bounded number
    // of times, then clamps. The loop bound keeps the stream length finite
    // and the result deterministic even for hostile parameters.
    double truncated_normal(double mean, double stddev, double min_value) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            const double x = normal(mean, stddev);
            if (x >= min_value) return x;
        }
        return min_value;
    }

private:
    std::mt19937_64 gen_;
};

// Derives an independent per-channel seed from a base seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace mycolex

#endif
