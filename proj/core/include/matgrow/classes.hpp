#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matgrow/matroid.hpp"
#include "matgrow/util.hpp"

namespace matgrow {

/// Minor-closed class given by representability constraints and excluded
/// minors: members are representable over every listed field order and have
/// no minor isomorphic to an excluded matroid.
struct ClassSpec {
  std::vector<int> fields;
  std::vector<Matroid> excluded;
  Budget caps;
  std::string name;
};

struct MinorWitness {
  Bits contracted;
  Bits deleted;
  std::vector<int> map;  // pattern slot -> host slot
};

/// Exhaustive minor test with forced independent contractions, rank and
/// density pruning, and a signature cache of failed contractions.
std::optional<MinorWitness> has_minor(const Matroid& host,
                                      const Matroid& pattern);

/// Column realizability over GF(q), by backtracking over normalized columns
/// after pinning a basis to the identity. Small search regime (|si(M)| <= 13
/// beyond the rank-2 shortcuts); throws when exceeded.
bool is_representable(const Matroid& m, int q);

/// Membership in the class: representable over every listed field and free
/// of every excluded minor. Search-regime overruns surface as BudgetError,
/// never as a silent answer.
bool class_membership(const ClassSpec& spec, const Matroid& m);

struct ClassParams {
  int ell = 0;  // least l with U_{2,l+2} outside the class
  int s = 0;    // largest excluded rank
  int q = 0;    // largest common base order with no representable exclusion
  std::optional<int> trunc_excluded;  // t with T(pg(t+1, q)) outside the class
};

ClassParams class_params(const ClassSpec& spec);

/// Text form: "fields 2 4", "excluded <path>...", "budget nodes=<n>".
ClassSpec parse_class_spec(std::istream& in, const std::string& base_dir);
std::string format_class_spec(const ClassSpec& spec,
                              const std::vector<std::string>& excluded_paths);

}  // namespace matgrow
