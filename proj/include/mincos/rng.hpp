#pragma once

#include <cstdint>
#include <random>

namespace mincos {

/**
 * Seeded stream of uniform and normal deviates.
 *
 * Engine: std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniforms are (bits >> 11 + 0.5) * 2^-53, strictly inside (0, 1).
 * Normals use the Box-Muller transform on consecutive uniform pairs, both
 * outputs of a pair are consumed in order. Unlike std::*_distribution, the
 * results are identical across standard library implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mincos
