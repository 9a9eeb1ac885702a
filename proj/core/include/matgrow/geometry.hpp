#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "matgrow/matroid.hpp"
#include "matgrow/util.hpp"

namespace matgrow {

/// Rank-n projective geometry over GF(q) as a column matroid on its
/// (q^n-1)/(q-1) normalized points.
Matroid pg(int n, int q);
/// Rank-n affine geometry: pg(n, q) minus a hyperplane; q^{n-1} points.
Matroid ag(int n, int q);

/// Upward-closed family of flats closed under modular-pair intersection.
/// Stored either as a single principal generator (valid in any matroid and
/// at any size) or as the materialized flat list (small matroids).
class ModularCut {
 public:
  /// Filter of all flats containing `flat`. Always a valid cut.
  static ModularCut principal(const Matroid& m, const Bits& flat);
  /// {E(M)}: the free extension.
  static ModularCut whole(const Matroid& m);
  /// Empty cut: the new element becomes a coloop.
  static ModularCut empty_cut();
  /// Explicit flat list; validates upward closure and modular-pair
  /// intersection closure, throws std::invalid_argument otherwise.
  static ModularCut from_flats(const Matroid& m, std::vector<Bits> flats);

  bool is_empty() const { return !principal_ && flats_.empty(); }
  bool is_principal() const { return principal_.has_value(); }
  const Bits& generator() const { return *principal_; }
  const std::vector<Bits>& flats() const { return flats_; }

  /// Does the cut contain cl_m(x)? (x need not be closed.)
  bool spans(const Matroid& m, const Bits& x) const;

  bool operator==(const ModularCut& o) const;

 private:
  std::optional<Bits> principal_;
  std::vector<Bits> flats_;  // sorted; materialized form
};

/// Single-element extension of M determined by a modular cut. The new
/// element takes slot M.slots().
Matroid extend(const Matroid& m, const ModularCut& cut);
int extension_slot(const Matroid& m);

struct ExtensionList {
  std::vector<Matroid> items;
  bool truncated = false;
};

/// All single-element extensions of M via modular-cut enumeration,
/// optionally reduced up to isomorphism, truncated at cap.
ExtensionList enumerate_extensions(const Matroid& m, bool iso_reduce,
                                   size_t cap);
std::vector<ModularCut> enumerate_modular_cuts(const Matroid& m, size_t cap,
                                               bool* truncated = nullptr);

/// Witness that a matroid is a k-element projection of a projective
/// geometry: `lifted` extends the geometry by the independent flat K and
/// `projected` = lifted / K (loopless, rank >= 2).
struct ProjectionCertificate {
  Matroid lifted;
  Matroid projected;
  Matroid geometry;  // lifted \ K, the base pg
  Bits K;
  int q = 0;
  int k = 0;
  std::optional<uint64_t> seed;

  int r() const { return projected.rank(); }
};

/// Extends G (which must be pg(n, q) up to isomorphism; pass the pg() object
/// itself) by one element per cut, contracting all new elements at the end.
/// Cuts are applied in order; cut[i] must be a cut of the i-times-extended
/// matroid. Throws naming the violated certificate invariant.
ProjectionCertificate project(const Matroid& G, int q,
                              const std::vector<ModularCut>& cuts,
                              std::optional<uint64_t> seed = {});
/// Convenience form: each step is a principal cut on the closure (in the
/// current lifted matroid) of the given generator set.
ProjectionCertificate project_principal(const Matroid& G, int q,
                                        const std::vector<Bits>& generators,
                                        std::optional<uint64_t> seed = {});
/// Deterministic pseudo-random certificate with the given shape.
ProjectionCertificate seeded_projection(int q, int k, int r, uint64_t seed);
void validate_certificate(const ProjectionCertificate& c);

/// Two-element extension of a projective geometry G = pg(n+2, q) by a pair
/// {x1, x2} such that removing either element leaves a free extension, the
/// pair is skew to every flat of rank < n and spanned by no hyperplane, and
/// the rank-n flats skew to the pair are exactly `fprime`. Validated
/// exhaustively (subsets plus rank axioms); throws when no such matroid
/// exists at this size.
Matroid paired_extension(const Matroid& G, const std::vector<Bits>& fprime);

/// Basis masks (as element sets of the pg ground set) of all rank-j
/// subspaces, enumerated through canonical reduced-echelon forms.
std::vector<Bits> subspace_bases(const Matroid& pg_matroid, int j);
/// Full point set of the subspace spanned by a basis mask.
Bits subspace_points(const Matroid& pg_matroid, const Bits& basis);

}  // namespace matgrow
