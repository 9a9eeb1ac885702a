#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "matgrow/bits.hpp"
#include "matgrow/gf.hpp"

namespace matgrow {

/// Rank oracle interface. Implementations must be pure: rank_raw may be
/// called concurrently once construction finishes.
struct RankBackend {
  virtual ~RankBackend() = default;
  virtual int rank_raw(const Bits& x) const = 0;
};

struct LinearData {
  const Field* field;
  GFMatrix cols;               // columns indexed by slot
  std::vector<std::array<uint8_t, 8>> coords;  // per-slot column copy
};

/// Immutable matroid with a memoized rank oracle.
///
/// Elements live in a fixed slot universe; the ground set is a subset mask
/// of slots, so minors, restrictions and sums keep their original element
/// ids. Copies share the underlying oracle and cache.
class Matroid {
 public:
  Matroid() = default;

  static Matroid from_backend(int slots, const Bits& ground,
                              std::shared_ptr<const RankBackend> be,
                              std::string name = "");
  static Matroid from_rank_fn(int n, std::function<int(const Bits&)> f,
                              std::string name = "");
  /// Column matroid: element i is column i of `cols`.
  static Matroid linear(const Field& f, const GFMatrix& cols,
                        std::string name = "");
  /// Explicit matroid from a basis family on elements {0..n-1}. Validates
  /// the exchange axiom when n <= 12.
  static Matroid from_bases(int n, const std::vector<Bits>& bases,
                            std::string name = "");
  static Matroid uniform(int r, int n);

  bool valid() const { return impl_ != nullptr; }
  int slots() const;
  const Bits& ground() const;
  int size() const { return ground().count(); }
  const std::string& name() const;

  int rank() const;
  int rank(const Bits& x) const;
  bool indep(const Bits& x) const { return rank(x) == x.count(); }
  bool is_loop(int e) const { return rank(Bits::single(e)) == 0; }
  Bits closure(const Bits& x) const;
  bool spans(const Bits& x, int e) const;

  Matroid contract(const Bits& c) const;
  Matroid remove(const Bits& d) const;
  Matroid restrict_to(const Bits& x) const;
  /// M / c \ d. Throws if c and d overlap or leave the ground set.
  Matroid minorize(const Bits& c, const Bits& d) const;
  Matroid truncate() const;

  /// Present when the backend is a plain column matroid.
  const LinearData* linear_data() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct SimplificationMap {
  Bits kept;
  Bits loops;
  std::vector<Bits> classes;  // parallel classes of nonloops, rep = lowest elem
};

/// Deletes loops and all but the lowest element of each parallel class.
std::pair<Matroid, SimplificationMap> simplify(const Matroid& m);
std::vector<Bits> parallel_classes(const Matroid& m);
/// Number of rank-1 flats.
long long epsilon(const Matroid& m);

/// All flats of rank exactly r, sorted.
std::vector<Bits> flats_of_rank(const Matroid& m, int r);
/// Flats grouped by rank, ranks 0..max_rank.
std::vector<std::vector<Bits>> flats_up_to(const Matroid& m, int max_rank);
/// Flats grouped by rank, ranks 0..r(M).
std::vector<std::vector<Bits>> all_flats(const Matroid& m);

int local_conn(const Matroid& m, const Bits& x, const Bits& y);
bool is_skew(const Matroid& m, const std::vector<Bits>& parts);
bool is_modular_pair(const Matroid& m, const Bits& x, const Bits& y);
/// Every cocircuit (complement of a hyperplane) has rank >= r(M)-1;
/// vacuously true when there is no violating cocircuit.
bool is_weakly_round(const Matroid& m);

/// Rank-preserving ground-set bijection as a slot map (image[slot] = slot of
/// the other matroid, -1 off the ground set), or nullopt. Deterministic.
std::optional<std::vector<int>> is_isomorphic(const Matroid& a,
                                              const Matroid& b);

/// Exhaustive rank-axiom check (|E| <= 12): normalization, unit increase,
/// local submodularity. Throws std::invalid_argument on violation.
void validate_axioms(const Matroid& m);

/// rank functions agree on every subset of the (shared) ground set.
bool rank_equal(const Matroid& a, const Matroid& b);

/// Uniform-minor helpers used across tests and searches.
Matroid direct_sum(const Matroid& a, const Matroid& b);

}  // namespace matgrow
