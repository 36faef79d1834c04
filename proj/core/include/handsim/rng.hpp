#pragma once

#include <cstdint>
#include <random>

namespace handsim {

// mt19937_64 with a hand-rolled uniform mapping. std::uniform_real_distribution
// is implementation-defined, which would break byte-identical traces across
// platforms; (x >> 11) * 2^-53 is not.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace handsim
