#pragma once

#include "matgrow/matroid.hpp"

namespace matgrow {

/// Modular sum (generalised parallel connection) input. Both matroids live
/// in one slot universe; `shared` must equal the ground intersection, be a
/// modular flat of `left`, and carry identical restrictions.
struct SumSpec {
  Matroid left;
  Matroid right;
  Bits shared;
};

/// F forms a modular pair with every flat of M. F must be a flat.
bool is_modular_flat(const Matroid& m, const Bits& f);

/// The unique matroid on E(left) | E(right) having both inputs as
/// restrictions; closure is the common fixpoint of the two closure
/// operators. Throws naming the violated invariant.
Matroid modular_sum(const SumSpec& spec);

/// Relabels m into a new universe: new_of[old slot] = new slot (-1 drops are
/// not allowed for ground elements).
Matroid relabel(const Matroid& m, const std::vector<int>& new_of,
                int new_slots);

/// Glues a fresh rank-n geometry over GF(q) onto M along the spanning
/// restriction M|F (which must be isomorphic to a rank-r(M) geometry) and
/// returns the modular sum.
Matroid geometry_extend(const Matroid& m, const Bits& f, int n, int q);

}  // namespace matgrow
