#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace matgrow {

/// Fixed-capacity element set. Capacity is sized for the largest geometry
/// handled at desk scale (rank-6 geometry over GF(3): 364 points) plus a
/// few extension elements.
class Bits {
 public:
  static constexpr int kWords = 6;
  static constexpr int kCapacity = kWords * 64;

  constexpr Bits() : w_{} {}

  static Bits range(int n) {
    Bits b;
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
  }
  static Bits of(std::initializer_list<int> xs) {
    Bits b;
    for (int x : xs) b.set(x);
    return b;
  }
  static Bits single(int i) {
    Bits b;
    b.set(i);
    return b;
  }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  Bits with(int i) const {
    Bits b = *this;
    b.set(i);
    return b;
  }
  Bits without(int i) const {
    Bits b = *this;
    b.reset(i);
    return b;
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !empty(); }

  int lowest() const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return -1;
  }

  /// Smallest set bit >= i, or -1.
  int next(int i) const {
    if (i >= kCapacity) return -1;
    int wi = i >> 6;
    uint64_t w = w_[wi] & (~uint64_t{0} << (i & 63));
    while (true) {
      if (w) return wi * 64 + std::countr_zero(w);
      if (++wi == kWords) return -1;
      w = w_[wi];
    }
  }

  bool subset_of(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  friend Bits operator|(const Bits& a, const Bits& b) {
    Bits r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = a.w_[i] | b.w_[i];
    return r;
  }
  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = a.w_[i] & b.w_[i];
    return r;
  }
  /// Set difference.
  friend Bits operator-(const Bits& a, const Bits& b) {
    Bits r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = a.w_[i] & ~b.w_[i];
    return r;
  }
  Bits& operator|=(const Bits& o) {
    for (int i = 0; i < kWords; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (int i = 0; i < kWords; ++i) w_[i] &= o.w_[i];
    return *this;
  }

  bool operator==(const Bits& o) const { return w_ == o.w_; }
  bool operator!=(const Bits& o) const { return w_ != o.w_; }
  /// Arbitrary but stable total order (high word first).
  bool operator<(const Bits& o) const {
    for (int i = kWords - 1; i >= 0; --i)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

  std::vector<int> elems() const {
    std::vector<int> v;
    v.reserve(count());
    for (int e = lowest(); e >= 0; e = next(e + 1)) v.push_back(e);
    return v;
  }

  /// Low 64 bits; the whole set when the universe has <= 64 slots.
  uint64_t low() const { return w_[0]; }

  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : w_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::string to_string() const;

 private:
  std::array<uint64_t, kWords> w_;
};

struct BitsHash {
  size_t operator()(const Bits& b) const { return static_cast<size_t>(b.hash()); }
};

template <class F>
inline void for_each_elem(const Bits& b, F&& f) {
  for (int e = b.lowest(); e >= 0; e = b.next(e + 1)) f(e);
}

inline std::string Bits::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int e = lowest(); e >= 0; e = next(e + 1)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

}  // namespace matgrow
