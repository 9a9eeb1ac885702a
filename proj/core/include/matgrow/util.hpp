#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace matgrow {

/// Thrown when a bounded search runs out of budget. Callers must be able to
/// tell this apart from a definite negative answer.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
  uint64_t nodes = 1'000'000;
};

inline long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (1ll << 62) / (b > 0 ? b : 1))
      throw std::overflow_error("integer power overflow");
    r *= b;
  }
  return r;
}

/// (q^n - 1) / (q - 1): number of points of a rank-n projective geometry.
inline long long pg_size(int q, int n) { return (ipow(q, n) - 1) / (q - 1); }

/// Deterministic 64-bit generator (splitmix64); used everywhere a seed is
/// required so results are reproducible across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

 private:
  uint64_t s_;
};

}  // namespace matgrow
