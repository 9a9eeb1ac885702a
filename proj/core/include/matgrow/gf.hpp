#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace matgrow {

/// Arithmetic tables for GF(q), q a prime power <= 16. Elements are small
/// integer indices; for extension fields the index encodes the polynomial
/// coefficient vector in base p, reduced by a fixed irreducible polynomial
/// per order (GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+1, GF(16): x^4+x+1)
/// so that representations are identical across runs.
class Field {
 public:
  /// Shared immutable instance for a supported order; throws
  /// std::invalid_argument naming the order otherwise.
  static const Field& get(int q);
  static bool supported(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const { return inv_[a]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add(a, neg(b)); }

  /// GF(q) embeds in GF(q') iff they share the characteristic and the
  /// extension degree divides.
  bool subfield_of(const Field& o) const {
    return p_ == o.p_ && o.e_ % e_ == 0;
  }

 private:
  explicit Field(int q);
  int q_, p_, e_;
  std::vector<uint8_t> add_, mul_;
  std::array<uint8_t, 16> neg_{}, inv_{};
};

/// Dense matrix of field element indices.
struct GFMatrix {
  int rows = 0, cols = 0;
  std::vector<uint8_t> a;

  GFMatrix() = default;
  GFMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  uint8_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

/// Rank by row reduction over F.
int mat_rank(const Field& f, const GFMatrix& m);

/// One normalized vector (first nonzero coordinate 1) per 1-dimensional
/// subspace of F^n, in a fixed deterministic order. Size (q^n-1)/(q-1).
std::vector<std::vector<uint8_t>> projective_points(const Field& f, int n);

/// Incremental row-echelon basis over a field, dimension <= 8. Used as the
/// rank kernel for column matroids.
struct VecSpan {
  const Field* f = nullptr;
  int dim = 0;
  int nrows = 0;
  std::array<std::array<uint8_t, 8>, 8> rows{};
  std::array<int, 8> pivot{};

  void init(const Field& field, int d) {
    f = &field;
    dim = d;
    nrows = 0;
  }
  /// Reduce v against the basis; insert if independent. Returns true if the
  /// span grew. v must have dim entries.
  bool insert(const uint8_t* v);
  bool contains(const uint8_t* v) const;
  int rank() const { return nrows; }
};

/// Text format: "q <order> rows <r> cols <c>" then r lines of c entries.
std::string format_matrix(int q, const GFMatrix& m);
/// Parses the format above; returns the field order through q_out.
GFMatrix parse_matrix(std::istream& in, int& q_out);

}  // namespace matgrow
