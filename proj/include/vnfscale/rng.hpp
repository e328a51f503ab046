#pragma once

#include <cstdint>
#include <random>

namespace vnfs {

// Uniform double in [0,1) built directly from the top 53 bits of the engine
// output. std::uniform_real_distribution is implementation-defined, which
// would break bit-exact reproducibility across standard libraries.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

} // namespace vnfs
