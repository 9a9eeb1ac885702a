#include "matgrow/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace matgrow {

namespace {

// Greedy basis of a set: elements that raise the rank, scanned in slot order.
Bits greedy_basis(const Matroid& m, const Bits& x) {
  Bits b;
  int r = 0;
  for (int e = x.lowest(); e >= 0; e = x.next(e + 1)) {
    Bits be = b.with(e);
    if (m.rank(be) > r) {
      b = be;
      ++r;
    }
  }
  return b;
}

struct ExtBackend : RankBackend {
  Matroid parent;
  int slot;
  ModularCut cut;
  int rank_raw(const Bits& x) const override {
    if (!x.test(slot)) return parent.rank(x);
    Bits y = x.without(slot);
    int r = parent.rank(y);
    return r + (cut.spans(parent, y) ? 0 : 1);
  }
};

struct PairedBackend : RankBackend {
  Matroid g;
  int x1, x2, n;  // rank-n flats are the distinguished level; r(G) = n + 2
  std::set<Bits> fprime;
  int rank_raw(const Bits& x) const override {
    Bits xg = x;
    bool h1 = x.test(x1), h2 = x.test(x2);
    if (h1) xg.reset(x1);
    if (h2) xg.reset(x2);
    int j = g.rank(xg);
    int cap = n + 2;
    if (!h1 && !h2) return j;
    if (h1 != h2) return std::min(j + 1, cap);
    if (j <= n - 1) return std::min(j + 2, cap);
    if (j == n) return fprime.count(g.closure(xg)) ? j + 2 : j + 1;
    return cap;
  }
};

}  // namespace

Matroid pg(int n, int q) {
  const Field& f = Field::get(q);
  auto pts = projective_points(f, n);
  GFMatrix m(n, static_cast<int>(pts.size()));
  for (int c = 0; c < m.cols; ++c)
    for (int r = 0; r < n; ++r) m.at(r, c) = pts[c][r];
  return Matroid::linear(f, m,
                         "pg_" + std::to_string(n) + "_" + std::to_string(q));
}

Matroid ag(int n, int q) {
  if (n < 2) throw std::invalid_argument("ag: rank must be >= 2");
  const Field& f = Field::get(q);
  auto pts = projective_points(f, n);
  // points off the hyperplane {first coordinate 0}: the leading block
  int cnt = static_cast<int>(ipow(q, n - 1));
  GFMatrix m(n, cnt);
  for (int c = 0; c < cnt; ++c)
    for (int r = 0; r < n; ++r) m.at(r, c) = pts[c][r];
  return Matroid::linear(f, m,
                         "ag_" + std::to_string(n) + "_" + std::to_string(q));
}

ModularCut ModularCut::principal(const Matroid& m, const Bits& flat) {
  if (!flat.subset_of(m.ground()))
    throw std::invalid_argument("modular cut: flat not within the ground set");
  if (m.closure(flat) != flat)
    throw std::invalid_argument("modular cut: generator is not a flat");
  ModularCut c;
  c.principal_ = greedy_basis(m, flat);
  if (flat.empty()) c.principal_ = Bits();
  return c;
}

ModularCut ModularCut::whole(const Matroid& m) {
  return principal(m, m.closure(m.ground()));
}

ModularCut ModularCut::empty_cut() { return ModularCut(); }

ModularCut ModularCut::from_flats(const Matroid& m, std::vector<Bits> flats) {
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
  std::set<Bits> in(flats.begin(), flats.end());
  for (const Bits& f : flats) {
    if (m.closure(f) != f)
      throw std::invalid_argument("modular cut: member is not a flat");
    // upward closure via covers
    Bits rest = m.ground() - f;
    for (int e = rest.lowest(); e >= 0; e = rest.next(e + 1)) {
      Bits up = m.closure(f.with(e));
      if (!in.count(up))
        throw std::invalid_argument(
            "modular cut: not upward closed (missing a flat above a member)");
    }
  }
  for (size_t i = 0; i < flats.size(); ++i)
    for (size_t j = i + 1; j < flats.size(); ++j)
      if (is_modular_pair(m, flats[i], flats[j]) &&
          !in.count(flats[i] & flats[j]))
        throw std::invalid_argument(
            "modular cut: modular pair with intersection outside the cut");
  ModularCut c;
  c.flats_ = std::move(flats);
  return c;
}

bool ModularCut::spans(const Matroid& m, const Bits& x) const {
  if (principal_) {
    // generator basis inside cl(x) <=> generated flat inside cl(x)
    return m.rank(x | *principal_) == m.rank(x);
  }
  if (flats_.empty()) return false;
  Bits cl = m.closure(x);
  return std::binary_search(flats_.begin(), flats_.end(), cl);
}

bool ModularCut::operator==(const ModularCut& o) const {
  if (principal_.has_value() != o.principal_.has_value()) return false;
  if (principal_) return *principal_ == *o.principal_;
  return flats_ == o.flats_;
}

int extension_slot(const Matroid& m) { return m.slots(); }

Matroid extend(const Matroid& m, const ModularCut& cut) {
  auto be = std::make_shared<ExtBackend>();
  be->parent = m;
  be->slot = m.slots();
  be->cut = cut;
  return Matroid::from_backend(m.slots() + 1, m.ground().with(be->slot), be,
                               "");
}

std::vector<ModularCut> enumerate_modular_cuts(const Matroid& m, size_t cap,
                                               bool* truncated) {
  if (truncated) *truncated = false;
  auto levels = all_flats(m);
  std::vector<Bits> flat;
  for (auto& lv : levels)
    for (auto& f : lv) flat.push_back(f);
  std::sort(flat.begin(), flat.end());
  int nf = static_cast<int>(flat.size());
  if (nf > 600)
    throw std::invalid_argument("modular cut enumeration: flat lattice too large");
  std::map<Bits, int> idx;
  for (int i = 0; i < nf; ++i) idx[flat[i]] = i;

  // superset lists, modular-pair matrix, intersection table
  std::vector<std::vector<int>> sup(nf);
  std::vector<std::vector<int>> inter(nf, std::vector<int>(nf));
  std::vector<std::vector<char>> modular(nf, std::vector<char>(nf));
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      if (i != j && flat[i].subset_of(flat[j])) sup[i].push_back(j);
      if (j > i) {
        Bits meet = flat[i] & flat[j];
        auto it = idx.find(m.closure(meet));
        inter[i][j] = it->second;
        modular[i][j] = is_modular_pair(m, flat[i], flat[j]) ? 1 : 0;
      }
    }

  auto close = [&](std::vector<char>& s) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> members;
      for (int i = 0; i < nf; ++i)
        if (s[i]) members.push_back(i);
      for (int i : members)
        for (int j : sup[i])
          if (!s[j]) {
            s[j] = 1;
            changed = true;
          }
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) {
          int i = members[a], j = members[b];
          if (modular[i][j] && !s[inter[i][j]]) {
            s[inter[i][j]] = 1;
            changed = true;
          }
        }
    }
  };

  std::vector<ModularCut> cuts;
  auto emit = [&](const std::vector<char>& s) {
    std::vector<Bits> fl;
    for (int i = 0; i < nf; ++i)
      if (s[i]) fl.push_back(flat[i]);
    ModularCut c;
    if (fl.empty()) {
      cuts.push_back(ModularCut::empty_cut());
    } else {
      std::sort(fl.begin(), fl.end());
      cuts.push_back(ModularCut::from_flats(m, std::move(fl)));
    }
  };

  // Ganter's NextClosure over the cut-closure operator
  std::vector<char> a(nf, 0);
  close(a);
  emit(a);
  while (cuts.size() < cap) {
    bool advanced = false;
    for (int i = nf - 1; i >= 0 && !advanced; --i) {
      if (a[i]) continue;
      std::vector<char> b(nf, 0);
      for (int j = 0; j < i; ++j) b[j] = a[j];
      b[i] = 1;
      close(b);
      bool lectic = true;
      for (int j = 0; j < i && lectic; ++j)
        if (b[j] && !a[j]) lectic = false;
      if (lectic) {
        a = b;
        emit(a);
        advanced = true;
      }
    }
    if (!advanced) return cuts;
  }
  if (truncated) *truncated = true;
  return cuts;
}

namespace {

// cheap invariant key: rank, size, point count, line-length multiset
std::string iso_key(const Matroid& m) {
  std::string key = std::to_string(m.rank()) + "/" + std::to_string(m.size()) +
                    "/" + std::to_string(epsilon(m)) + "/";
  if (m.rank() >= 2) {
    std::vector<int> lens;
    for (const Bits& l : flats_of_rank(m, 2)) lens.push_back(l.count());
    std::sort(lens.begin(), lens.end());
    for (int v : lens) key += std::to_string(v) + ",";
  }
  return key;
}

}  // namespace

ExtensionList enumerate_extensions(const Matroid& m, bool iso_reduce,
                                   size_t cap) {
  if (m.size() + 1 > Bits::kCapacity)
    throw std::invalid_argument("enumerate_extensions: ground cap exceeded");
  bool cut_trunc = false;
  auto cuts = enumerate_modular_cuts(m, iso_reduce ? SIZE_MAX : cap, &cut_trunc);
  ExtensionList out;
  out.truncated = cut_trunc;
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t ci = 0; ci < cuts.size(); ++ci) {
    Matroid ext = extend(m, cuts[ci]);
    if (iso_reduce) {
      std::string key = iso_key(ext);
      auto& group = groups[key];
      bool dup = false;
      for (size_t idx : group)
        if (is_isomorphic(out.items[idx], ext)) {
          dup = true;
          break;
        }
      if (dup) continue;
      group.push_back(out.items.size());
    }
    out.items.push_back(std::move(ext));
    if (out.items.size() >= cap) {
      out.truncated = out.truncated || ci + 1 < cuts.size();
      break;
    }
  }
  return out;
}

ProjectionCertificate project(const Matroid& G, int q,
                              const std::vector<ModularCut>& cuts,
                              std::optional<uint64_t> seed) {
  ProjectionCertificate c;
  c.geometry = G;
  c.q = q;
  c.k = static_cast<int>(cuts.size());
  c.seed = seed;
  Matroid lifted = G;
  Bits K;
  for (const ModularCut& cut : cuts) {
    int slot = extension_slot(lifted);
    lifted = extend(lifted, cut);
    K.set(slot);
  }
  c.lifted = lifted;
  c.K = K;
  c.projected = lifted.contract(K);
  validate_certificate(c);
  return c;
}

ProjectionCertificate project_principal(const Matroid& G, int q,
                                        const std::vector<Bits>& generators,
                                        std::optional<uint64_t> seed) {
  std::vector<ModularCut> cuts;
  Matroid lifted = G;
  ProjectionCertificate c;
  c.geometry = G;
  c.q = q;
  c.k = static_cast<int>(generators.size());
  c.seed = seed;
  Bits K;
  for (const Bits& gen : generators) {
    ModularCut cut = ModularCut::principal(lifted, lifted.closure(gen));
    int slot = extension_slot(lifted);
    lifted = extend(lifted, cut);
    K.set(slot);
  }
  c.lifted = lifted;
  c.K = K;
  c.projected = lifted.contract(K);
  validate_certificate(c);
  return c;
}

void validate_certificate(const ProjectionCertificate& c) {
  if (!c.lifted.valid() || !c.projected.valid() || !c.geometry.valid())
    throw std::invalid_argument("certificate: missing matroid");
  if (c.K.count() != c.k)
    throw std::invalid_argument("certificate: |K| differs from declared k");
  if (c.lifted.rank(c.K) != c.k)
    throw std::invalid_argument("certificate invariant violated: K dependent");
  if (c.lifted.closure(c.K) != c.K)
    throw std::invalid_argument(
        "certificate invariant violated: K not a flat (projection has loops)");
  if (c.projected.rank() < 2)
    throw std::invalid_argument(
        "certificate invariant violated: projected rank < 2");
  // geometry structural check: right ground, simple pg point count and rank
  if (c.geometry.ground() != c.lifted.ground() - c.K)
    throw std::invalid_argument(
        "certificate invariant violated: geometry is not lifted minus K");
  int n = c.geometry.rank();
  if (c.lifted.rank() != n)
    throw std::invalid_argument(
        "certificate invariant violated: lifted rank differs from geometry");
  bool geometry_ok =
      epsilon(c.geometry) == pg_size(c.q, n) &&
      c.geometry.size() == pg_size(c.q, n);
  if (geometry_ok && c.geometry.size() <= 20)
    geometry_ok = is_isomorphic(c.geometry, pg(n, c.q)).has_value();
  if (!geometry_ok)
    throw std::invalid_argument(
        "certificate invariant violated: geometry is not a rank-" +
        std::to_string(n) + " projective geometry over GF(" +
        std::to_string(c.q) + ")");
}

ProjectionCertificate seeded_projection(int q, int k, int r, uint64_t seed) {
  if (r < 2) throw std::invalid_argument("seeded_projection: rank must be >= 2");
  Matroid G = pg(r + k, q);
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matroid lifted = G;
    std::vector<Bits> gens;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      // random flat of rank >= 2 in the current lifted matroid
      int target = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(r + k - 1)));
      Bits basis;
      int guard = 0;
      auto els = lifted.ground().elems();
      while (basis.count() < target && guard++ < 1000) {
        int e = els[rng.below(els.size())];
        if (!lifted.spans(basis, e)) basis.set(e);
      }
      if (basis.count() < 2) {
        ok = false;
        break;
      }
      gens.push_back(basis);
      lifted = extend(lifted, ModularCut::principal(lifted, lifted.closure(basis)));
    }
    if (!ok) continue;
    try {
      return project_principal(G, q, gens, seed);
    } catch (const std::invalid_argument&) {
      continue;  // e.g. K failed to be a flat; try fresh randomness
    }
  }
  throw std::runtime_error("seeded_projection: no valid certificate found");
}

Matroid paired_extension(const Matroid& G, const std::vector<Bits>& fprime) {
  const LinearData* ld = G.linear_data();
  if (!ld) throw std::invalid_argument("paired_extension: geometry must be a column matroid");
  int q = ld->field->order();
  int N = G.rank();
  if (N < 2 || G.size() != pg_size(q, N) || epsilon(G) != pg_size(q, N))
    throw std::invalid_argument("paired_extension: not a projective geometry");
  int n = N - 2;
  if (G.size() + 2 > 12)
    throw std::invalid_argument(
        "paired_extension: exhaustive validation regime is |E| <= 12");
  auto level = flats_of_rank(G, n);
  std::set<Bits> level_set(level.begin(), level.end());
  auto be = std::make_shared<PairedBackend>();
  be->g = G;
  be->x1 = G.slots();
  be->x2 = G.slots() + 1;
  be->n = n;
  for (const Bits& f : fprime) {
    if (!level_set.count(f))
      throw std::invalid_argument("paired_extension: set is not a rank-" +
                                  std::to_string(n) + " flat of the geometry");
    be->fprime.insert(f);
  }
  Bits ground = G.ground().with(be->x1).with(be->x2);
  Matroid m = Matroid::from_backend(G.slots() + 2, ground, be, "");

  try {
    validate_axioms(m);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(
        "paired_extension: no matroid satisfies the required properties for "
        "this flat family");
  }
  // property 1: deleting either new element leaves a free extension
  Bits pair = Bits::of({be->x1, be->x2});
  {
    size_t total = size_t{1} << G.size();
    auto els = G.ground().elems();
    for (size_t ms = 0; ms < total; ++ms) {
      Bits x;
      for (size_t i = 0; i < els.size(); ++i)
        if (ms >> i & 1) x.set(els[static_cast<int>(i)]);
      int j = G.rank(x);
      int want = std::min(j + 1, N);
      if (m.rank(x.with(be->x1)) != want || m.rank(x.with(be->x2)) != want)
        throw std::runtime_error(
            "paired_extension: single-element deletion is not a free extension");
    }
  }
  // property 2: pair skew to all low flats, spanned by no hyperplane
  auto levels = all_flats(G);
  for (int rk = 0; rk < n; ++rk)
    for (const Bits& f : levels[rk])
      if (m.rank(f | pair) != G.rank(f) + 2)
        throw std::runtime_error(
            "paired_extension: pair fails to be skew to a low-rank flat");
  for (const Bits& h : levels[N - 1])
    if (m.rank(h | pair) != N)
      throw std::runtime_error("paired_extension: pair spanned by a hyperplane");
  // property 3: skew rank-n flats are exactly fprime
  for (const Bits& f : levels[n]) {
    bool skew = m.rank(f | pair) == n + 2;
    if (skew != (be->fprime.count(f) > 0))
      throw std::runtime_error(
          "paired_extension: skew rank-n flats differ from the requested family");
  }
  return m;
}

std::vector<Bits> subspace_bases(const Matroid& pg_matroid, int j) {
  const LinearData* ld = pg_matroid.linear_data();
  if (!ld) throw std::invalid_argument("subspace_bases: need a column matroid");
  const Field& f = *ld->field;
  int q = f.order();
  int n = ld->cols.rows;
  if (j < 0 || j > n) throw std::invalid_argument("subspace_bases: bad rank");
  if (j == 0) return {Bits()};

  // coordinate key -> slot
  std::map<long long, int> slot_of;
  for (int c = 0; c < ld->cols.cols; ++c) {
    long long key = 0;
    for (int r = n - 1; r >= 0; --r) key = key * q + ld->cols.at(r, c);
    slot_of[key] = c;
  }
  auto point_slot = [&](const std::array<uint8_t, 8>& v) {
    long long key = 0;
    for (int r = n - 1; r >= 0; --r) key = key * q + v[r];
    auto it = slot_of.find(key);
    if (it == slot_of.end())
      throw std::logic_error("subspace_bases: point not found");
    return it->second;
  };

  std::vector<Bits> out;
  // iterate pivot column sets in lexicographic order
  std::vector<int> piv(j);
  for (int i = 0; i < j; ++i) piv[i] = i;
  while (true) {
    // free positions: row r, column c with c > piv[r], c not a pivot
    std::vector<std::pair<int, int>> free_pos;
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    for (int r = 0; r < j; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.emplace_back(r, c);
    long long total = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) total *= q;
    for (long long t = 0; t < total; ++t) {
      std::vector<std::array<uint8_t, 8>> rows(j);
      for (int r = 0; r < j; ++r) {
        rows[r] = {};
        rows[r][piv[r]] = 1;
      }
      long long x = t;
      for (auto [r, c] : free_pos) {
        rows[r][c] = static_cast<uint8_t>(x % q);
        x /= q;
      }
      Bits basis;
      for (int r = 0; r < j; ++r) basis.set(point_slot(rows[r]));
      out.push_back(basis);
    }
    // next pivot combination
    int i = j - 1;
    while (i >= 0 && piv[i] == n - j + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int t2 = i + 1; t2 < j; ++t2) piv[t2] = piv[t2 - 1] + 1;
  }
  return out;
}

Bits subspace_points(const Matroid& pg_matroid, const Bits& basis) {
  const LinearData* ld = pg_matroid.linear_data();
  if (!ld) throw std::invalid_argument("subspace_points: need a column matroid");
  VecSpan sp;
  sp.init(*ld->field, ld->cols.rows);
  for (int e = basis.lowest(); e >= 0; e = basis.next(e + 1))
    sp.insert(ld->coords[e].data());
  Bits out;
  const Bits& g = pg_matroid.ground();
  for (int e = g.lowest(); e >= 0; e = g.next(e + 1))
    if (sp.contains(ld->coords[e].data())) out.set(e);
  return out;
}

}  // namespace matgrow
