#include "matgrow/matroid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace matgrow {

namespace {

struct FnBackend : RankBackend {
  std::function<int(const Bits&)> f;
  int rank_raw(const Bits& x) const override { return f(x); }
};

struct LinearBackend : RankBackend {
  LinearData d;
  int rank_raw(const Bits& x) const override {
    VecSpan sp;
    sp.init(*d.field, d.cols.rows);
    for (int e = x.lowest(); e >= 0; e = x.next(e + 1)) {
      sp.insert(d.coords[e].data());
      if (sp.rank() == d.cols.rows) break;
    }
    return sp.rank();
  }
};

struct BasisBackend : RankBackend {
  std::vector<Bits> bases;
  int rank_raw(const Bits& x) const override {
    int best = 0;
    for (const Bits& b : bases) best = std::max(best, (b & x).count());
    return best;
  }
};

struct MinorBackend : RankBackend {
  Matroid parent;
  Bits contracted;
  int rc;
  int rank_raw(const Bits& x) const override {
    return parent.rank(x | contracted) - rc;
  }
};

struct TruncBackend : RankBackend {
  Matroid parent;
  int cap;
  int rank_raw(const Bits& x) const override {
    return std::min(parent.rank(x), cap);
  }
};

}  // namespace

struct Matroid::Impl {
  int slots = 0;
  Bits ground;
  std::string name;
  std::shared_ptr<const RankBackend> be;

  // rank cache: dense table for small universes; hash map otherwise, with
  // migration to a table once a mid-sized matroid turns out to be hot
  static constexpr int kTableSlots = 14;
  static constexpr int kMigrateSlots = 17;
  static constexpr size_t kMigrateAt = 3000;
  mutable std::vector<int8_t> table;
  mutable std::unordered_map<Bits, int, BitsHash> memo;

  int rank(const Bits& x) const {
    if (slots <= kTableSlots && table.empty())
      table.assign(size_t{1} << slots, int8_t{-1});
    if (!table.empty()) {
      int8_t& slot = table[static_cast<size_t>(x.low())];
      if (slot < 0) slot = static_cast<int8_t>(be->rank_raw(x));
      return slot;
    }
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    int r = be->rank_raw(x);
    memo.emplace(x, r);
    if (slots <= kMigrateSlots && memo.size() >= kMigrateAt) {
      table.assign(size_t{1} << slots, int8_t{-1});
      for (const auto& [k, v] : memo)
        table[static_cast<size_t>(k.low())] = static_cast<int8_t>(v);
      memo.clear();
    }
    return r;
  }
};

Matroid Matroid::from_backend(int slots, const Bits& ground,
                              std::shared_ptr<const RankBackend> be,
                              std::string name) {
  if (slots > Bits::kCapacity)
    throw std::invalid_argument("matroid: universe exceeds capacity");
  auto impl = std::make_shared<Impl>();
  impl->slots = slots;
  impl->ground = ground;
  impl->name = std::move(name);
  impl->be = std::move(be);
  Matroid m;
  m.impl_ = std::move(impl);
  return m;
}

Matroid Matroid::from_rank_fn(int n, std::function<int(const Bits&)> f,
                              std::string name) {
  auto be = std::make_shared<FnBackend>();
  be->f = std::move(f);
  return from_backend(n, Bits::range(n), be, std::move(name));
}

Matroid Matroid::linear(const Field& f, const GFMatrix& cols,
                        std::string name) {
  if (cols.rows > 8)
    throw std::invalid_argument("linear matroid: rank dimension > 8");
  auto be = std::make_shared<LinearBackend>();
  be->d.field = &f;
  be->d.cols = cols;
  be->d.coords.resize(cols.cols);
  for (int c = 0; c < cols.cols; ++c) {
    be->d.coords[c] = {};
    for (int r = 0; r < cols.rows; ++r) be->d.coords[c][r] = cols.at(r, c);
  }
  return from_backend(cols.cols, Bits::range(cols.cols), be, std::move(name));
}

Matroid Matroid::from_bases(int n, const std::vector<Bits>& bases,
                            std::string name) {
  if (bases.empty()) throw std::invalid_argument("basis family empty");
  int r = bases.front().count();
  for (const Bits& b : bases) {
    if (b.count() != r)
      throw std::invalid_argument("basis family: unequal basis sizes");
    if (!b.subset_of(Bits::range(n)))
      throw std::invalid_argument("basis family: element out of range");
  }
  if (n <= 12) {
    // exchange axiom: for B1, B2 and e in B1-B2 there is f in B2-B1 with
    // B1 - e + f a basis
    std::set<Bits> all(bases.begin(), bases.end());
    for (const Bits& b1 : bases)
      for (const Bits& b2 : bases) {
        Bits d12 = b1 - b2;
        for (int e = d12.lowest(); e >= 0; e = d12.next(e + 1)) {
          bool ok = false;
          Bits d21 = b2 - b1;
          for (int f = d21.lowest(); f >= 0 && !ok; f = d21.next(f + 1))
            ok = all.count(b1.without(e).with(f)) > 0;
          if (!ok)
            throw std::invalid_argument(
                "basis family violates the exchange axiom");
        }
      }
  }
  auto be = std::make_shared<BasisBackend>();
  be->bases = bases;
  return from_backend(n, Bits::range(n), be, std::move(name));
}

Matroid Matroid::uniform(int r, int n) {
  if (r > n) throw std::invalid_argument("uniform: rank exceeds size");
  return from_rank_fn(
      n, [r](const Bits& x) { return std::min(x.count(), r); },
      "U_" + std::to_string(r) + "_" + std::to_string(n));
}

int Matroid::slots() const { return impl_->slots; }
const Bits& Matroid::ground() const { return impl_->ground; }
const std::string& Matroid::name() const { return impl_->name; }


int Matroid::rank() const { return rank(ground()); }

int Matroid::rank(const Bits& x) const {
  if (!x.subset_of(impl_->ground))
    throw std::invalid_argument("rank: set not within the ground set");
  return impl_->rank(x);
}

Bits Matroid::closure(const Bits& x) const {
  int rx = rank(x);
  Bits cl = x;
  Bits rest = ground() - x;
  for (int e = rest.lowest(); e >= 0; e = rest.next(e + 1))
    if (rank(x.with(e)) == rx) cl.set(e);
  return cl;
}

bool Matroid::spans(const Bits& x, int e) const {
  if (x.test(e)) return true;
  return rank(x.with(e)) == rank(x);
}

Matroid Matroid::contract(const Bits& c) const { return minorize(c, Bits()); }
Matroid Matroid::remove(const Bits& d) const { return minorize(Bits(), d); }
Matroid Matroid::restrict_to(const Bits& x) const {
  return minorize(Bits(), ground() - x);
}

Matroid Matroid::minorize(const Bits& c, const Bits& d) const {
  if (c.intersects(d))
    throw std::invalid_argument("minor: contraction and deletion overlap");
  if (!c.subset_of(ground()) || !d.subset_of(ground()))
    throw std::invalid_argument("minor: sets not within the ground set");
  if (c.empty() && d.empty()) return *this;
  Bits g = ground() - c - d;
  if (c.empty()) {
    // pure deletion shares the oracle
    return from_backend(slots(), g, impl_->be, impl_->name);
  }
  auto be = std::make_shared<MinorBackend>();
  be->parent = *this;
  be->contracted = c;
  be->rc = rank(c);
  return from_backend(slots(), g, be, "");
}

Matroid Matroid::truncate() const {
  int r = rank();
  if (r < 1) throw std::invalid_argument("truncate: rank-0 matroid");
  auto be = std::make_shared<TruncBackend>();
  be->parent = *this;
  be->cap = r - 1;
  return from_backend(slots(), ground(), be, "");
}

const LinearData* Matroid::linear_data() const {
  auto* lb = dynamic_cast<const LinearBackend*>(impl_->be.get());
  return lb ? &lb->d : nullptr;
}

std::vector<Bits> parallel_classes(const Matroid& m) {
  std::vector<Bits> classes;
  Bits seen;
  const Bits& g = m.ground();
  for (int e = g.lowest(); e >= 0; e = g.next(e + 1)) {
    if (seen.test(e) || m.is_loop(e)) continue;
    Bits cls = m.closure(Bits::single(e));
    // drop loops that sit inside the closure
    Bits out;
    for (int f = cls.lowest(); f >= 0; f = cls.next(f + 1))
      if (!m.is_loop(f)) out.set(f);
    classes.push_back(out);
    seen |= out;
  }
  return classes;
}

long long epsilon(const Matroid& m) {
  return static_cast<long long>(parallel_classes(m).size());
}

std::pair<Matroid, SimplificationMap> simplify(const Matroid& m) {
  SimplificationMap sm;
  const Bits& g = m.ground();
  for (int e = g.lowest(); e >= 0; e = g.next(e + 1))
    if (m.is_loop(e)) sm.loops.set(e);
  sm.classes = parallel_classes(m);
  for (const Bits& c : sm.classes) sm.kept.set(c.lowest());
  return {m.restrict_to(sm.kept), sm};
}

std::vector<std::vector<Bits>> flats_up_to(const Matroid& m, int max_rank) {
  std::vector<std::vector<Bits>> levels;
  levels.push_back({m.closure(Bits())});
  for (int r = 0; r < max_rank; ++r) {
    std::set<Bits> next;
    for (const Bits& f : levels[r]) {
      Bits rest = m.ground() - f;
      for (int e = rest.lowest(); e >= 0; e = rest.next(e + 1))
        next.insert(m.closure(f.with(e)));
    }
    levels.emplace_back(next.begin(), next.end());
  }
  return levels;
}

std::vector<Bits> flats_of_rank(const Matroid& m, int r) {
  if (r < 0 || r > m.rank())
    throw std::invalid_argument("flats_of_rank: rank out of range");
  return flats_up_to(m, r)[r];
}

std::vector<std::vector<Bits>> all_flats(const Matroid& m) {
  return flats_up_to(m, m.rank());
}

int local_conn(const Matroid& m, const Bits& x, const Bits& y) {
  return m.rank(x) + m.rank(y) - m.rank(x | y);
}

bool is_skew(const Matroid& m, const std::vector<Bits>& parts) {
  Bits u;
  int sum = 0;
  for (const Bits& p : parts) {
    u |= p;
    sum += m.rank(p);
  }
  return m.rank(u) == sum;
}

bool is_modular_pair(const Matroid& m, const Bits& x, const Bits& y) {
  return m.rank(x & y) == m.rank(x) + m.rank(y) - m.rank(x | y);
}

bool is_weakly_round(const Matroid& m) {
  int r = m.rank();
  if (r <= 1) return true;
  for (const Bits& h : flats_of_rank(m, r - 1))
    if (m.rank(m.ground() - h) < r - 1) return false;
  return true;
}

void validate_axioms(const Matroid& m) {
  std::vector<int> el = m.ground().elems();
  int n = static_cast<int>(el.size());
  if (n > 12)
    throw std::invalid_argument("validate_axioms: exhaustive regime is |E| <= 12");
  if (m.rank(Bits()) != 0)
    throw std::invalid_argument("axiom violation: r(empty) != 0");
  size_t total = size_t{1} << n;
  std::vector<int> rk(total);
  std::vector<Bits> set_of(total);
  for (size_t ms = 0; ms < total; ++ms) {
    Bits b;
    for (int i = 0; i < n; ++i)
      if (ms >> i & 1) b.set(el[i]);
    set_of[ms] = b;
    rk[ms] = m.rank(b);
  }
  for (size_t ms = 0; ms < total; ++ms) {
    for (int i = 0; i < n; ++i) {
      if (ms >> i & 1) continue;
      size_t mi = ms | (size_t{1} << i);
      int d = rk[mi] - rk[ms];
      if (d < 0 || d > 1)
        throw std::invalid_argument("axiom violation: unit increase fails on " +
                                    set_of[ms].to_string());
      for (int j = i + 1; j < n; ++j) {
        if (ms >> j & 1) continue;
        size_t mj = ms | (size_t{1} << j);
        size_t mij = mi | mj;
        if (rk[mi] + rk[mj] < rk[mij] + rk[ms])
          throw std::invalid_argument(
              "axiom violation: submodularity fails on " +
              set_of[ms].to_string() + " with elements " +
              std::to_string(el[i]) + "," + std::to_string(el[j]));
      }
    }
  }
}

bool rank_equal(const Matroid& a, const Matroid& b) {
  if (a.ground() != b.ground()) return false;
  std::vector<int> el = a.ground().elems();
  int n = static_cast<int>(el.size());
  if (n > 20) throw std::invalid_argument("rank_equal: regime is |E| <= 20");
  size_t total = size_t{1} << n;
  for (size_t ms = 0; ms < total; ++ms) {
    Bits x;
    for (int i = 0; i < n; ++i)
      if (ms >> i & 1) x.set(el[i]);
    if (a.rank(x) != b.rank(x)) return false;
  }
  return true;
}

Matroid direct_sum(const Matroid& a, const Matroid& b) {
  // b's slots are shifted above a's universe
  int na = a.slots();
  int slots = na + b.slots();
  Bits ground = a.ground();
  for (int e = b.ground().lowest(); e >= 0; e = b.ground().next(e + 1))
    ground.set(na + e);
  Matroid ac = a, bc = b;
  auto be = std::make_shared<FnBackend>();
  be->f = [ac, bc, na](const Bits& x) {
    Bits xa, xb;
    for (int e = x.lowest(); e >= 0; e = x.next(e + 1)) {
      if (e < na)
        xa.set(e);
      else
        xb.set(e - na);
    }
    return ac.rank(xa) + bc.rank(xb);
  };
  return Matroid::from_backend(slots, ground, be, "");
}

namespace {

// Per-element invariants used to prune the isomorphism search.
struct ElemSig {
  int loop;
  int cls_size;
  std::vector<int> line_sizes;  // multiset of point-counts of lines through e
  bool operator==(const ElemSig& o) const {
    return loop == o.loop && cls_size == o.cls_size && line_sizes == o.line_sizes;
  }
  bool operator<(const ElemSig& o) const {
    if (loop != o.loop) return loop < o.loop;
    if (cls_size != o.cls_size) return cls_size < o.cls_size;
    return line_sizes < o.line_sizes;
  }
};

std::vector<ElemSig> elem_sigs(const Matroid& m, const std::vector<Bits>& lines) {
  std::vector<ElemSig> sigs(m.slots());
  auto classes = parallel_classes(m);
  std::vector<int> cls_size(m.slots(), 0);
  for (const Bits& c : classes)
    for (int e = c.lowest(); e >= 0; e = c.next(e + 1)) cls_size[e] = c.count();
  for (int e = m.ground().lowest(); e >= 0; e = m.ground().next(e + 1)) {
    ElemSig s;
    s.loop = m.is_loop(e) ? 1 : 0;
    s.cls_size = cls_size[e];
    for (const Bits& l : lines)
      if (l.test(e)) s.line_sizes.push_back(l.count());
    std::sort(s.line_sizes.begin(), s.line_sizes.end());
    sigs[e] = s;
  }
  return sigs;
}

struct IsoSearch {
  const Matroid *a, *b;
  std::vector<int> ea, eb;  // element lists
  std::vector<ElemSig> sa, sb;
  std::vector<int> map;       // slot of a -> slot of b
  std::vector<char> used;     // by index into eb
  bool found = false;
  std::vector<int> out;

  // checks rank agreement on all subsets of the mapped prefix that contain
  // the newly mapped element, up to size 4 (full check at the leaf); the
  // quadruples matter, otherwise maps violating coplanarity survive deep
  // into the search
  bool consistent(int depth) {
    Bits xa, xb;
    int e = ea[depth];
    xa.set(e);
    xb.set(map[e]);
    if (a->rank(xa) != b->rank(xb)) return false;
    for (int i = 0; i < depth; ++i) {
      Bits pa = xa.with(ea[i]), pb = xb.with(map[ea[i]]);
      if (a->rank(pa) != b->rank(pb)) return false;
      for (int j = i + 1; j < depth; ++j) {
        Bits ta = pa.with(ea[j]), tb = pb.with(map[ea[j]]);
        if (a->rank(ta) != b->rank(tb)) return false;
        for (int l = j + 1; l < depth; ++l) {
          if (a->rank(ta.with(ea[l])) != b->rank(tb.with(map[ea[l]])))
            return false;
        }
      }
    }
    return true;
  }

  bool full_check() {
    int n = static_cast<int>(ea.size());
    size_t total = size_t{1} << n;
    for (size_t ms = 0; ms < total; ++ms) {
      Bits xa, xb;
      for (int i = 0; i < n; ++i)
        if (ms >> i & 1) {
          xa.set(ea[i]);
          xb.set(map[ea[i]]);
        }
      if (a->rank(xa) != b->rank(xb)) return false;
    }
    return true;
  }

  void rec(int depth) {
    if (found) return;
    if (depth == static_cast<int>(ea.size())) {
      if (full_check()) {
        found = true;
        out = map;
      }
      return;
    }
    int e = ea[depth];
    for (size_t bi = 0; bi < eb.size() && !found; ++bi) {
      if (used[bi]) continue;
      if (!(sa[e] == sb[eb[bi]])) continue;
      map[e] = eb[bi];
      used[bi] = 1;
      if (consistent(depth)) rec(depth + 1);
      used[bi] = 0;
      map[e] = -1;
    }
  }
};

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Matroid& a,
                                              const Matroid& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.rank() != b.rank()) return std::nullopt;
  if (a.size() > 20)
    throw std::invalid_argument("is_isomorphic: regime is |E| <= 20");
  if (epsilon(a) != epsilon(b)) return std::nullopt;
  auto la = a.rank() >= 2 ? flats_of_rank(a, 2) : std::vector<Bits>{};
  auto lb = b.rank() >= 2 ? flats_of_rank(b, 2) : std::vector<Bits>{};
  // line-size multiset invariant
  std::multiset<int> ma, mb;
  for (const Bits& l : la) ma.insert(l.count());
  for (const Bits& l : lb) mb.insert(l.count());
  if (ma != mb) return std::nullopt;

  IsoSearch s;
  s.a = &a;
  s.b = &b;
  s.ea = a.ground().elems();
  s.eb = b.ground().elems();
  s.sa = elem_sigs(a, la);
  s.sb = elem_sigs(b, lb);
  // most constrained first: rarest signature
  std::map<ElemSig, int> freq;
  for (int e : s.ea) freq[s.sa[e]]++;
  std::stable_sort(s.ea.begin(), s.ea.end(), [&](int x, int y) {
    return freq[s.sa[x]] < freq[s.sa[y]];
  });
  s.map.assign(a.slots(), -1);
  s.used.assign(s.eb.size(), 0);
  s.rec(0);
  if (!s.found) return std::nullopt;
  return s.out;
}

}  // namespace matgrow
