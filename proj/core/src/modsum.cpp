#include "matgrow/modsum.hpp"

#include <stdexcept>

#include "matgrow/geometry.hpp"

namespace matgrow {

namespace {

struct RelabelBackend : RankBackend {
  Matroid inner;
  std::vector<int> to_inner;  // new slot -> inner slot
  int rank_raw(const Bits& x) const override {
    Bits y;
    for (int e = x.lowest(); e >= 0; e = x.next(e + 1)) y.set(to_inner[e]);
    return inner.rank(y);
  }
};

struct SumBackend : RankBackend {
  Matroid left, right;
  Bits el, er, shared;

  Bits closure_sum(const Bits& x) const {
    Bits y = x;
    while (true) {
      Bits next = y | left.closure(y & el) | right.closure(y & er);
      if (next == y) return y;
      y = next;
    }
  }

  // rank formula of the generalised parallel connection:
  // r(X) = r_L(F & E_L) + r_R(F & E_R) - r(F & T) with F = cl(X)
  int rank_raw(const Bits& x) const override {
    Bits f = closure_sum(x);
    return left.rank(f & el) + right.rank(f & er) - left.rank(f & shared);
  }
};

}  // namespace

bool is_modular_flat(const Matroid& m, const Bits& f) {
  if (m.closure(f) != f)
    throw std::invalid_argument("is_modular_flat: set is not a flat");
  for (const auto& level : all_flats(m))
    for (const Bits& g : level)
      if (!is_modular_pair(m, f, g)) return false;
  return true;
}

Matroid relabel(const Matroid& m, const std::vector<int>& new_of,
                int new_slots) {
  auto be = std::make_shared<RelabelBackend>();
  be->inner = m;
  be->to_inner.assign(new_slots, -1);
  Bits ground;
  for (int e = m.ground().lowest(); e >= 0; e = m.ground().next(e + 1)) {
    int ne = new_of[e];
    if (ne < 0 || ne >= new_slots)
      throw std::invalid_argument("relabel: ground element unmapped");
    if (ground.test(ne)) throw std::invalid_argument("relabel: collision");
    ground.set(ne);
    be->to_inner[ne] = e;
  }
  return Matroid::from_backend(new_slots, ground, be, m.name());
}

Matroid modular_sum(const SumSpec& spec) {
  const Matroid& l = spec.left;
  const Matroid& r = spec.right;
  if ((l.ground() & r.ground()) != spec.shared)
    throw std::invalid_argument(
        "modular_sum invariant violated: shared set differs from the ground "
        "intersection");
  // degenerate containments: one side must literally restrict to the other
  auto contained = [](const Matroid& host, const Matroid& part) {
    if (part.size() > 20)
      throw std::invalid_argument(
          "modular_sum: contained side too large to verify");
    return rank_equal(host.restrict_to(part.ground()), part);
  };
  if (r.ground().subset_of(l.ground())) {
    if (!contained(l, r))
      throw std::invalid_argument(
          "modular_sum invariant violated: restrictions to the shared set "
          "differ");
    return l;
  }
  if (l.ground().subset_of(r.ground())) {
    if (!contained(r, l))
      throw std::invalid_argument(
          "modular_sum invariant violated: restrictions to the shared set "
          "differ");
    return r;
  }
  if (l.closure(spec.shared) != spec.shared)
    throw std::invalid_argument(
        "modular_sum invariant violated: shared set is not a flat of the "
        "left matroid");
  if (!is_modular_flat(l, spec.shared))
    throw std::invalid_argument(
        "modular_sum invariant violated: shared flat is not modular in the "
        "left matroid");
  {
    auto els = spec.shared.elems();
    if (els.size() > 16)
      throw std::invalid_argument("modular_sum: shared part too large to check");
    size_t total = size_t{1} << els.size();
    for (size_t ms = 0; ms < total; ++ms) {
      Bits x;
      for (size_t i = 0; i < els.size(); ++i)
        if (ms >> i & 1) x.set(els[i]);
      if (l.rank(x) != r.rank(x))
        throw std::invalid_argument(
            "modular_sum invariant violated: restrictions to the shared set "
            "differ");
    }
  }

  auto be = std::make_shared<SumBackend>();
  be->left = l;
  be->right = r;
  be->el = l.ground();
  be->er = r.ground();
  be->shared = spec.shared;
  int slots = std::max(l.slots(), r.slots());
  Matroid sum = Matroid::from_backend(slots, l.ground() | r.ground(), be, "");

  // rank additivity is part of the contract; verify on construction
  if (sum.rank() != l.rank() + r.rank() - l.rank(spec.shared))
    throw std::invalid_argument(
        "modular_sum invariant violated: rank additivity failed");
  return sum;
}

Matroid geometry_extend(const Matroid& m, const Bits& f, int n, int q) {
  if (!f.subset_of(m.ground()))
    throw std::invalid_argument("geometry_extend: flat outside the ground set");
  int r = m.rank();
  if (n < r)
    throw std::invalid_argument("geometry_extend: target rank below r(M)");
  if (m.rank(f) != r)
    throw std::invalid_argument("geometry_extend: restriction is not spanning");

  Matroid side = m.restrict_to(f);
  Matroid small_pg = pg(r, q);
  if (side.size() != small_pg.size())
    throw std::invalid_argument(
        "geometry_extend: restriction has the wrong size for a rank-" +
        std::to_string(r) + " geometry over GF(" + std::to_string(q) + ")");

  Matroid big = pg(n, q);
  // standard rank-r subspace: spanned by the first r unit vectors
  const LinearData* ld = big.linear_data();
  Bits unit_basis;
  for (int c = 0; c < ld->cols.cols; ++c) {
    int nz = 0, hi = -1;
    for (int row = 0; row < n; ++row)
      if (ld->cols.at(row, c)) {
        ++nz;
        hi = row;
      }
    if (nz == 1 && hi < r) unit_basis.set(c);
  }
  Bits w = subspace_points(big, unit_basis);
  auto iso = is_isomorphic(side, big.restrict_to(w));
  if (!iso)
    throw std::invalid_argument(
        "geometry_extend: no isomorphism between the restriction and a "
        "geometry flat");
  if (n == r) {
    // the geometry is the shared flat itself; the sum degenerates to M
    return m;
  }

  // relabel the big geometry into M's universe: shared points take M's slot
  // ids, the rest get fresh slots
  std::vector<int> new_of(big.slots(), -1);
  for (int e = f.lowest(); e >= 0; e = f.next(e + 1)) new_of[(*iso)[e]] = e;
  int next = m.slots();
  for (int e = big.ground().lowest(); e >= 0; e = big.ground().next(e + 1))
    if (new_of[e] < 0) new_of[e] = next++;
  Matroid big_relabelled = relabel(big, new_of, next);

  SumSpec spec;
  spec.left = big_relabelled;
  spec.right = m;
  spec.shared = f;
  return modular_sum(spec);
}

}  // namespace matgrow
