#pragma once

#include <cstdint>

#include "entroinv/types.hpp"

namespace entroinv {

// splitmix64 stream.  Hand-rolled (not <random> distributions) so that seeded
// verification output is byte-identical across standard library
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in {lo, ..., hi} inclusive.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int k = lo + static_cast<int>(uniform() * span);
    return k > hi ? hi : k;
  }

  Vector vector(Index n, double lo, double hi) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace entroinv
