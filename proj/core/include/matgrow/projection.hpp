#pragma once

#include <optional>
#include <vector>

#include "matgrow/geometry.hpp"
#include "matgrow/matroid.hpp"
#include "matgrow/util.hpp"

namespace matgrow {

/// Density parameters of a certified projection: eps + q*d equals the point
/// count of a rank-(r+k) geometry over GF(q).
struct DensityReport {
  int k = 0;
  long long d = 0;
  long long d_raw = 0;  // q * d
  bool in_bound = false;  // d <= (q^{2k}-1)/(q^2-1)
  bool floor_ok = false;  // eps >= q^{k/2}
  long long eps = 0;
};

DensityReport density_params(const ProjectionCertificate& cert);

/// Spanning restriction of the projection certified with k' contractions,
/// obtained from a rank-(r+k') flat of the geometry whose local connectivity
/// with K is exactly k'. Throws if the search fails.
ProjectionCertificate spanning_subprojection(const ProjectionCertificate& cert,
                                             int kprime);

struct SensitiveReport {
  Bits sensitive;            // elements whose contraction changes d
  long long eps_restricted;  // eps of the restriction to that set
  bool small_bound_ok;       // eps_restricted < q^{58 k^4} (saturating)
};

SensitiveReport sensitive_elements(const ProjectionCertificate& cert);

/// Largest h >= 1 such that every restriction of rank <= h is
/// GF(q)-representable, capped at r-1. Computed both definitionally and via
/// the skewness of K to low-rank flats of the geometry; a disagreement for
/// levels >= 2 throws (the two computations are provably equivalent).
int local_rep_level(const ProjectionCertificate& cert);

/// Minimum size of a partition of E(G) into at least two flats; exhaustive,
/// restricted to geometries of rank <= 4.
int flat_partition_min(const Matroid& g);

struct SunflowerWitness {
  Bits core;                 // common intersection F0
  std::vector<Bits> flats;   // the chosen t flats
};

/// Searches t flats from the given equal-rank family whose pairwise common
/// intersection is a single flat F0 with the differences skew in G/F0.
std::optional<SunflowerWitness> skew_sunflower(const Matroid& g,
                                               const std::vector<Bits>& flats,
                                               int t);

struct StackWitness {
  std::vector<Bits> layers;
  int q = 0;
  int t = 0;
};

/// Backtracking search for disjoint spanning layers F_1..F_k where each
/// (M/(F_1..F_{i-1}))|F_i has rank in [2,t] and is not GF(q)-representable.
/// Distinct outcomes: a witness, nullopt (exhausted), or BudgetError.
std::optional<StackWitness> find_stack(const Matroid& m, int q, int t, int k,
                                       const Budget& budget = {});
void validate_stack(const Matroid& m, const StackWitness& w);

/// Weakly round restriction onto a flat whose density is within the golden-
/// ratio factor of the input's: eps(M|F) * phi^{r(M)-r(F)} >= eps(M),
/// evaluated exactly. Returns M itself when already weakly round.
Matroid weakly_round_dense_restriction(const Matroid& m);
/// The exact golden-ratio density predicate used above (exposed for tests).
bool phi_density_ok(const Matroid& m, const Bits& flat);

/// Contraction minor N of a weakly round M with M|X = N|X, M|Y = N|Y and Y
/// spanning; requires r(X) < r(Y).
Matroid cospan_minor(const Matroid& m, const Bits& x, const Bits& y);

/// phi maps slots of M into slots of N (-1 off the ground set). True iff
/// phi(cl_M(X)) is contained in cl_N(phi(X)) for every X; checked over the
/// independent sets of M, which generate all closures.
bool is_projective_map(const std::vector<int>& phi, const Matroid& m,
                       const Matroid& n);

/// Triangle criterion for recognising projections: every triangle of G maps
/// to a single element or to a triangle of M. G must be a projective
/// geometry over GF(q) or the union of at most two geometry flats; phi must
/// be surjective onto the simple matroid M.
bool triangle_compatible(const std::vector<int>& phi, const Matroid& g,
                         const Matroid& m, int q);

/// N is a projection (quotient) of M on the same ground set iff every flat
/// of N is closed in M.
bool is_quotient(const Matroid& n, const Matroid& m);

/// Element -> representative of its parallel class in the projection;
/// the canonical surjection E(G) -> E(si(projected)).
std::vector<int> quotient_map(const ProjectionCertificate& cert);

struct StripResult {
  Bits removed;
  int k = 0;
  ProjectionCertificate witness;
};

/// Searches for D inside cl_M(K) such that M \ D is certified as a k-element
/// projection of a geometry over GF(q), smallest |D| first, k <= k_max.
/// Witnesses are reconstructed by enumerating iterated single-element
/// extensions of the matching geometry.
std::optional<StripResult> strip_to_projection(const Matroid& m, const Bits& K,
                                               int q, int k_max = 2,
                                               const Budget& budget = {});

}  // namespace matgrow
