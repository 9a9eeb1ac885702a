#pragma once

#include <optional>
#include <vector>

#include "matgrow/classes.hpp"
#include "matgrow/geometry.hpp"

namespace matgrow {

/// Exponential growth profile (q, k, d); the profile value at rank n is
/// (q^{n+k}-1)/(q-1) - q*d. n0 stays unset ("not computed") unless a caller
/// provides one.
struct GrowthProfile {
  int q = 0;
  int k = 0;
  long long d = 0;
  std::optional<long long> n0;
};

/// Exact profile value; throws when (k, q*d) lies outside the parameter
/// region 0 <= q*d <= q*(q^{2k}-1)/(q^2-1).
long long grf_formula(int q, int k, long long d, int n);

/// Strict order on profile cells (k, d_raw): lexicographic on (k, -d_raw).
/// Returns -1, 0, +1. Both cells must lie in the parameter region.
int dq_compare(int q, std::pair<int, long long> a, std::pair<int, long long> b);

struct HResult {
  long long value = 0;
  std::vector<Matroid> witnesses;
  bool exact = false;
};

/// Largest point count of a simple class member of rank <= n.
/// With representability constraints the candidates are the restrictions of
/// the rank-n geometry over the smallest listed field; otherwise all simple
/// matroids of rank <= n are enumerated by iterated single-element
/// extensions with isomorphism rejection. `exact` is set only when the
/// search provably completed.
HResult h_exhaustive(const ClassSpec& spec, int n, const Budget& budget = {});

struct SearchReport {
  bool found = false;
  GrowthProfile profile;
  std::vector<ProjectionCertificate> witnesses;
  uint64_t queries = 0;  // membership oracle calls
  bool truncated = false;
};

/// Searches, for k = k_max..0, the rank-m certified projections over the
/// class base order and returns the order-maximal cell (k, q*d) containing a
/// simple member, with its witnesses. Candidates are generated as k-fold
/// extensions of the rank-(m+k) geometry with isomorphism rejection.
SearchReport kd_search(const ClassSpec& spec, int m, int k_max,
                       const Budget& budget = {});

}  // namespace matgrow
