#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fogmetry {

// Distribution helpers on top of mt19937_64 with fully pinned-down output,
// so seeded generation is byte-identical across standard libraries
// (std::normal_distribution et al. are implementation-defined).

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

// Box-Muller, one draw per call (the second value is discarded to keep
// stream position a pure function of call count).
inline double gaussian(std::mt19937_64& gen) {
    double u1 = uniform01(gen);
    double u2 = uniform01(gen);
    while (u1 <= 0.0) u1 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace fogmetry
