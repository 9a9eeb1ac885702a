#include "matgrow/projection.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "matgrow/classes.hpp"

namespace matgrow {

namespace {

// a + b*phi with phi the golden ratio; exact sign arithmetic via
// a + b*phi = ((2a+b) + b*sqrt(5)) / 2.
struct PhiNum {
  long long a = 0, b = 0;
  static PhiNum integer(long long v) { return {v, 0}; }
  PhiNum operator*(const PhiNum& o) const {
    // phi^2 = phi + 1
    return {a * o.a + b * o.b, a * o.b + b * o.a + b * o.b};
  }
  PhiNum operator-(const PhiNum& o) const { return {a - o.a, b - o.b}; }
  int sign() const {
    long long u = 2 * a + b, v = b;
    if (u >= 0 && v >= 0) return (u || v) ? 1 : 0;
    if (u <= 0 && v <= 0) return (u || v) ? -1 : 0;
    long long uu = u * u, vv = 5 * v * v;
    if (u > 0) return uu > vv ? 1 : (uu < vv ? -1 : 0);
    return vv > uu ? 1 : (vv < uu ? -1 : 0);
  }
  bool operator>=(const PhiNum& o) const { return (*this - o).sign() >= 0; }
};

PhiNum phi_pow(int m) {
  // phi^m = F_m phi + F_{m-1}
  long long fprev = 1, fcur = 0;  // F_{-1}, F_0
  for (int i = 0; i < m; ++i) {
    long long nxt = fprev + fcur;
    fprev = fcur;
    fcur = nxt;
  }
  return {fprev, fcur};
}

long long pow_saturating(int q, long long e) {
  const long long kInf = 1ll << 62;
  long long r = 1;
  for (long long i = 0; i < e; ++i) {
    if (r > kInf / q) return kInf;
    r *= q;
  }
  return r;
}

}  // namespace

DensityReport density_params(const ProjectionCertificate& cert) {
  DensityReport rep;
  rep.k = cert.k;
  rep.eps = epsilon(cert.projected);
  int q = cert.q;
  long long total = pg_size(q, cert.r() + cert.k);
  long long qd = total - rep.eps;
  if (qd < 0 || qd % q != 0)
    throw std::runtime_error(
        "density: point defect is not a nonnegative multiple of q; bad "
        "certificate");
  rep.d_raw = qd;
  rep.d = qd / q;
  long long bound = (ipow(q, 2 * cert.k) - 1) / (static_cast<long long>(q) * q - 1);
  rep.in_bound = rep.d <= bound;
  rep.floor_ok = rep.eps * rep.eps >= ipow(q, cert.k);
  return rep;
}

ProjectionCertificate spanning_subprojection(const ProjectionCertificate& cert,
                                             int kprime) {
  if (kprime < 0 || kprime > cert.k)
    throw std::invalid_argument("spanning_subprojection: need 0 <= k' <= k");
  const Matroid& lifted = cert.lifted;
  const Matroid& g = cert.geometry;
  int r = cert.r();

  // rank-r flat of the geometry skew to K, grown greedily
  Bits basis;
  int cur = 0;
  const Bits& gg = g.ground();
  for (int e = gg.lowest(); e >= 0 && cur < r; e = gg.next(e + 1)) {
    Bits cand = basis.with(e);
    if (g.rank(cand) == cur + 1 &&
        lifted.rank(cand | cert.K) == cur + 1 + cert.k) {
      basis = cand;
      ++cur;
    }
  }
  if (cur < r)
    throw std::runtime_error(
        "spanning_subprojection: no spanning flat skew to K found");
  Bits flat = g.closure(basis);

  // raise the local connectivity with K one rank at a time
  for (int step = 1; step <= kprime; ++step) {
    int rf = g.rank(flat);
    int rfk = lifted.rank(flat | cert.K);
    bool grown = false;
    for (int e = gg.lowest(); e >= 0 && !grown; e = gg.next(e + 1)) {
      if (flat.test(e)) continue;
      if (g.rank(flat.with(e)) != rf + 1) continue;
      if (lifted.rank(flat.with(e) | cert.K) != rfk) continue;
      flat = g.closure(flat.with(e));
      grown = true;
    }
    if (!grown)
      throw std::runtime_error(
          "spanning_subprojection: could not raise connectivity to k'");
  }

  // split K: a part that extends the flat skewly gets contracted away
  Bits skew_part;
  int rflat = lifted.rank(flat);
  for (int e = cert.K.lowest(); e >= 0; e = cert.K.next(e + 1)) {
    Bits cand = skew_part.with(e);
    if (lifted.rank(flat | cand) == rflat + cand.count()) skew_part = cand;
  }
  Bits k2 = cert.K - skew_part;

  ProjectionCertificate out;
  out.q = cert.q;
  out.k = kprime;
  out.seed = cert.seed;
  out.K = k2;
  Matroid contracted = lifted.contract(skew_part);
  out.lifted = contracted.restrict_to(flat | k2);
  out.geometry = out.lifted.remove(k2);
  out.projected = out.lifted.contract(k2);
  validate_certificate(out);
  if (out.projected.rank() != r || cert.projected.rank(flat) != r)
    throw std::runtime_error(
        "spanning_subprojection: restriction is not spanning");
  return out;
}

SensitiveReport sensitive_elements(const ProjectionCertificate& cert) {
  SensitiveReport rep;
  DensityReport dp = density_params(cert);
  const Matroid& m = cert.projected;
  int q = cert.q;
  for (int e = m.ground().lowest(); e >= 0; e = m.ground().next(e + 1)) {
    Matroid me = m.contract(Bits::single(e));
    long long expected = pg_size(q, me.rank() + cert.k) - q * dp.d;
    if (epsilon(me) != expected) rep.sensitive.set(e);
  }
  rep.eps_restricted =
      rep.sensitive.empty() ? 0 : epsilon(m.restrict_to(rep.sensitive));
  long long k4 = 1;
  for (int i = 0; i < 4; ++i) k4 *= cert.k;
  rep.small_bound_ok = rep.eps_restricted < pow_saturating(q, 58 * k4);
  return rep;
}

int local_rep_level(const ProjectionCertificate& cert) {
  int r = cert.r();
  int q = cert.q;
  int cap = std::max(1, r - 1);

  // definitional route. A non-representable restriction stays
  // non-representable on its closure flat, which keeps the projected rank
  // and is a geometry flat of rank at most cap + k; so scanning geometry
  // subspaces covers every low-rank restriction.
  int min_fail = cap + 1;
  for (int j = 2; j <= std::min(cap + cert.k, r + cert.k); ++j) {
    for (const Bits& basis : subspace_bases(cert.geometry, j)) {
      int conn = j + cert.k - cert.lifted.rank(basis | cert.K);
      if (conn == 0) continue;  // skew flat: restricts to the geometry itself
      int rm = j - conn;
      if (rm < 2 || rm > cap || rm >= min_fail) continue;
      Bits pts = subspace_points(cert.geometry, basis);
      if (!is_representable(cert.projected.restrict_to(pts), q))
        min_fail = rm;
    }
  }
  int level_def = std::max(1, std::min(cap, min_fail - 1));

  // skewness route: smallest rank of a geometry flat not skew to K
  int nonskew_min = -1;
  for (int j = 2; j <= r + cert.k && nonskew_min < 0; ++j) {
    for (const Bits& basis : subspace_bases(cert.geometry, j)) {
      if (cert.lifted.rank(basis | cert.K) != j + cert.k) {
        nonskew_min = j;
        break;
      }
    }
  }
  int level_skew =
      nonskew_min < 0 ? cap : std::max(1, std::min(nonskew_min - 2, cap));

  if (level_def != level_skew)
    throw std::runtime_error(
        "local representability level: definitional value " +
        std::to_string(level_def) + " disagrees with skewness value " +
        std::to_string(level_skew));
  return level_def;
}

int flat_partition_min(const Matroid& g) {
  if (g.rank() > 4 || g.size() > 16)
    throw std::invalid_argument(
        "flat_partition_min: exhaustive regime exceeded");
  auto levels = all_flats(g);
  std::vector<Bits> usable;
  for (int r = 1; r < g.rank(); ++r)
    for (const Bits& f : levels[r])
      if (f.any()) usable.push_back(f);
  int best = g.size() + 1;
  const Bits ground = g.ground();
  std::function<void(Bits, int)> rec = [&](Bits covered, int parts) {
    if (parts + 1 >= best && covered != ground) return;
    if (covered == ground) {
      if (parts >= 2) best = std::min(best, parts);
      return;
    }
    int e = (ground - covered).lowest();
    for (const Bits& f : usable) {
      if (!f.test(e)) continue;
      if (f.intersects(covered)) continue;
      rec(covered | f, parts + 1);
    }
  };
  rec(Bits(), 0);
  if (best > g.size())
    throw std::runtime_error("flat_partition_min: no partition found");
  return best;
}

std::optional<SunflowerWitness> skew_sunflower(const Matroid& g,
                                               const std::vector<Bits>& flats,
                                               int t) {
  if (t < 1) throw std::invalid_argument("skew_sunflower: t must be >= 1");
  if (flats.empty()) return std::nullopt;
  int s = g.rank(flats.front());
  for (const Bits& f : flats)
    if (g.rank(f) != s || g.closure(f) != f)
      throw std::invalid_argument(
          "skew_sunflower: inputs must be equal-rank flats");
  if (t == 1) return SunflowerWitness{flats.front(), {flats.front()}};
  int n = static_cast<int>(flats.size());
  if (t > n) return std::nullopt;

  std::vector<int> pick(t);
  std::optional<SunflowerWitness> found;
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (found) return;
    if (depth == t) {
      Bits core = flats[pick[0]];
      for (int i = 1; i < t; ++i) core &= flats[pick[i]];
      Matroid contracted = g.contract(core);
      std::vector<Bits> parts;
      for (int i = 0; i < t; ++i) {
        parts.push_back(flats[pick[i]] - core);
        if (parts.back().empty()) return;  // repeated flat
      }
      if (is_skew(contracted, parts)) {
        std::vector<Bits> fs;
        for (int i = 0; i < t; ++i) fs.push_back(flats[pick[i]]);
        found = SunflowerWitness{core, fs};
      }
      return;
    }
    for (int i = start; i < n && !found; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return found;
}

void validate_stack(const Matroid& m, const StackWitness& w) {
  Bits prev;
  for (const Bits& f : w.layers) {
    if (f.intersects(prev))
      throw std::invalid_argument("stack: layers overlap");
    Matroid layer = m.contract(prev).restrict_to(f);
    int r = layer.rank();
    if (r < 1 || r > w.t)
      throw std::invalid_argument("stack: layer rank outside [1, t]");
    if (is_representable(simplify(layer).first, w.q))
      throw std::invalid_argument("stack: layer is representable");
    prev |= f;
  }
  if (m.rank(prev) != m.rank())
    throw std::invalid_argument("stack: union of layers does not span");
}

std::optional<StackWitness> find_stack(const Matroid& m, int q, int t, int k,
                                       const Budget& budget) {
  if (2 * k > m.rank())
    throw std::invalid_argument("find_stack: rank below 2k");
  uint64_t nodes = 0;
  StackWitness w;
  w.q = q;
  w.t = t;
  std::vector<Bits> layers;

  std::function<bool(const Bits&, int)> rec = [&](const Bits& used,
                                                  int depth) -> bool {
    if (depth == k) {
      Bits u;
      for (const Bits& f : layers) u |= f;
      return m.rank(u) == m.rank();
    }
    Matroid rest = m.contract(used);
    if (rest.rank() < 2 * (k - depth)) return false;
    auto els = (m.ground() - used).elems();
    int n = static_cast<int>(els.size());
    if (n > 24)
      throw std::invalid_argument("find_stack: remaining ground too large");
    for (uint64_t sub = 1; sub < (uint64_t{1} << n); ++sub) {
      int cnt = std::popcount(sub);
      // a non-representable layer needs at least q+2 points
      if (cnt < q + 2 || cnt > 13) continue;
      if (++nodes > budget.nodes)
        throw BudgetError("find_stack: node budget exhausted");
      Bits f;
      for (int i = 0; i < n; ++i)
        if (sub >> i & 1) f.set(els[i]);
      Matroid layer = rest.restrict_to(f);
      int r = layer.rank();
      if (r < 2 || r > t) continue;
      Matroid s = simplify(layer).first;
      if (s.size() > 13) continue;
      if (is_representable(s, q)) continue;
      layers.push_back(f);
      if (rec(used | f, depth + 1)) return true;
      layers.pop_back();
    }
    return false;
  };
  if (!rec(Bits(), 0)) return std::nullopt;
  w.layers = layers;
  validate_stack(m, w);
  return w;
}

bool phi_density_ok(const Matroid& m, const Bits& flat) {
  PhiNum lhs = PhiNum::integer(epsilon(m.restrict_to(flat))) *
               phi_pow(m.rank() - m.rank(flat));
  return lhs >= PhiNum::integer(epsilon(m));
}

Matroid weakly_round_dense_restriction(const Matroid& m) {
  Bits flat = m.ground();
  while (true) {
    Matroid cur = m.restrict_to(flat);
    int r = cur.rank();
    if (r <= 1 || is_weakly_round(cur)) return cur;
    for (const Bits& h : flats_of_rank(cur, r - 1)) {
      if (cur.rank(flat - h) <= r - 2) {
        Bits f2 = cur.closure(flat - h);
        if (phi_density_ok(m, h)) {
          flat = h;
        } else if (phi_density_ok(m, f2)) {
          flat = f2;
        } else {
          throw std::logic_error(
              "weakly_round_dense_restriction: density invariant broken");
        }
        break;
      }
    }
  }
}

Matroid cospan_minor(const Matroid& m, const Bits& x, const Bits& y) {
  if (!x.subset_of(m.ground()) || !y.subset_of(m.ground()))
    throw std::invalid_argument("cospan_minor: sets outside the ground set");
  if (!is_weakly_round(m))
    throw std::invalid_argument("cospan_minor: matroid is not weakly round");
  if (m.rank(x) >= m.rank(y))
    throw std::invalid_argument("cospan_minor: need r(X) < r(Y)");
  Matroid n = m;
  while (n.rank(y) < n.rank()) {
    Bits blocked = n.closure(x) | n.closure(y);
    Bits rest = n.ground() - blocked;
    int e = rest.lowest();
    if (e < 0)
      throw std::logic_error("cospan_minor: no contractible element left");
    n = n.contract(Bits::single(e));
  }
  if (n.rank(y) != n.rank())
    throw std::logic_error("cospan_minor: Y not spanning");
  if (x.count() <= 16 && y.count() <= 16) {
    auto check_restriction = [&](const Bits& s) {
      auto els = s.elems();
      size_t total = size_t{1} << els.size();
      for (size_t ms = 0; ms < total; ++ms) {
        Bits b;
        for (size_t i = 0; i < els.size(); ++i)
          if (ms >> i & 1) b.set(els[i]);
        if (m.rank(b) != n.rank(b))
          throw std::logic_error("cospan_minor: restriction not preserved");
      }
    };
    check_restriction(x);
    check_restriction(y);
  }
  return n;
}

bool is_projective_map(const std::vector<int>& phi, const Matroid& m,
                       const Matroid& n) {
  if (m.size() > 16 && m.rank() > 4)
    throw std::invalid_argument("is_projective_map: size regime exceeded");
  for (int e = m.ground().lowest(); e >= 0; e = m.ground().next(e + 1))
    if (e >= static_cast<int>(phi.size()) || phi[e] < 0 ||
        !n.ground().test(phi[e]))
      throw std::invalid_argument("is_projective_map: map not defined on E(M)");

  auto image = [&](const Bits& x) {
    Bits out;
    for (int e = x.lowest(); e >= 0; e = x.next(e + 1)) out.set(phi[e]);
    return out;
  };
  // the closure condition over all sets reduces to independent sets
  std::vector<int> els = m.ground().elems();
  std::function<bool(size_t, const Bits&)> rec = [&](size_t start,
                                                     const Bits& x) {
    if (!image(m.closure(x)).subset_of(n.closure(image(x)))) return false;
    for (size_t i = start; i < els.size(); ++i) {
      Bits nx = x.with(els[i]);
      if (m.rank(nx) != x.count() + 1) continue;
      if (!rec(i + 1, nx)) return false;
    }
    return true;
  };
  return rec(0, Bits());
}

namespace {

bool looks_like_geometry(const Matroid& m, int q) {
  long long want = pg_size(q, m.rank());
  if (m.size() != want || epsilon(m) != want) return false;
  if (m.rank() >= 2)
    for (const Bits& l : flats_of_rank(m, 2))
      if (l.count() != q + 1) return false;
  return true;
}

}  // namespace

bool triangle_compatible(const std::vector<int>& phi, const Matroid& g,
                         const Matroid& m, int q) {
  if (epsilon(m) != m.size())
    throw std::invalid_argument("triangle_compatible: M must be simple");
  Bits img;
  for (int e = g.ground().lowest(); e >= 0; e = g.ground().next(e + 1)) {
    if (e >= static_cast<int>(phi.size()) || phi[e] < 0 ||
        !m.ground().test(phi[e]))
      throw std::invalid_argument(
          "triangle_compatible: map not defined on E(G)");
    img.set(phi[e]);
  }
  if (img != m.ground())
    throw std::invalid_argument(
        "triangle_compatible: map not surjective onto E(M)");
  bool shape_ok = looks_like_geometry(g, q);
  if (!shape_ok) {
    auto levels = all_flats(g);
    std::vector<Bits> fl;
    for (auto& lv : levels) fl.insert(fl.end(), lv.begin(), lv.end());
    for (size_t i = 0; i < fl.size() && !shape_ok; ++i)
      for (size_t j = i; j < fl.size() && !shape_ok; ++j) {
        if ((fl[i] | fl[j]) != g.ground()) continue;
        if (looks_like_geometry(g.restrict_to(fl[i]), q) &&
            looks_like_geometry(g.restrict_to(fl[j]), q))
          shape_ok = true;
      }
  }
  if (!shape_ok)
    throw std::invalid_argument(
        "triangle_compatible: E(G) is not a union of at most two geometry "
        "flats");

  for (const Bits& line : flats_of_rank(g, 2)) {
    auto pts = line.elems();
    int np = static_cast<int>(pts.size());
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        for (int l = j + 1; l < np; ++l) {
          Bits t;
          t.set(phi[pts[i]]);
          t.set(phi[pts[j]]);
          t.set(phi[pts[l]]);
          int sz = t.count();
          if (sz == 1) continue;
          if (sz != 3 || m.rank(t) != 2) return false;
        }
  }
  return true;
}

bool is_quotient(const Matroid& n, const Matroid& m) {
  if (n.ground() != m.ground())
    throw std::invalid_argument("is_quotient: ground sets differ");
  for (const auto& level : all_flats(n))
    for (const Bits& f : level) {
      int rf = m.rank(f);
      Bits rest = m.ground() - f;
      for (int e = rest.lowest(); e >= 0; e = rest.next(e + 1))
        if (m.rank(f.with(e)) == rf) return false;
    }
  return true;
}

std::vector<int> quotient_map(const ProjectionCertificate& cert) {
  std::vector<int> phi(cert.lifted.slots(), -1);
  for (const Bits& cls : parallel_classes(cert.projected)) {
    int rep = cls.lowest();
    for (int e = cls.lowest(); e >= 0; e = cls.next(e + 1)) phi[e] = rep;
  }
  return phi;
}

std::optional<StripResult> strip_to_projection(const Matroid& m, const Bits& K,
                                               int q, int k_max,
                                               const Budget& budget) {
  if (epsilon(m) != m.size())
    throw std::invalid_argument("strip_to_projection: matroid must be simple");
  if (!K.subset_of(m.ground()))
    throw std::invalid_argument("strip_to_projection: K outside the ground set");
  Bits cl = m.closure(K);
  auto cl_els = cl.elems();
  int nc = static_cast<int>(cl_els.size());
  uint64_t nodes = 0;

  std::function<std::optional<ProjectionCertificate>(const Matroid&, int)>
      search = [&](const Matroid& target,
                   int k) -> std::optional<ProjectionCertificate> {
    Matroid g = pg(target.rank() + k, q);
    std::function<std::optional<ProjectionCertificate>(
        Matroid, std::vector<ModularCut>&)>
        rec = [&](Matroid lifted, std::vector<ModularCut>& cuts)
        -> std::optional<ProjectionCertificate> {
      if (static_cast<int>(cuts.size()) == k) {
        try {
          ProjectionCertificate cert = project(g, q, cuts);
          Matroid s = simplify(cert.projected).first;
          if (s.size() == target.size() && is_isomorphic(s, target))
            return cert;
        } catch (const std::invalid_argument&) {
        }
        return std::nullopt;
      }
      for (const ModularCut& cut : enumerate_modular_cuts(lifted, 4096)) {
        if (++nodes > budget.nodes)
          throw BudgetError("strip_to_projection: node budget exhausted");
        if (cut.is_empty()) continue;  // a coloop would change the geometry
        Matroid ext = extend(lifted, cut);
        if (ext.is_loop(extension_slot(lifted))) continue;
        cuts.push_back(cut);
        auto found = rec(ext, cuts);
        cuts.pop_back();
        if (found) return found;
      }
      return std::nullopt;
    };
    std::vector<ModularCut> cuts;
    return rec(g, cuts);
  };

  for (int dsize = 0; dsize <= nc; ++dsize) {
    for (uint64_t sub = 0; sub < (uint64_t{1} << nc); ++sub) {
      if (std::popcount(sub) != dsize) continue;
      Bits d;
      for (int i = 0; i < nc; ++i)
        if (sub >> i & 1) d.set(cl_els[i]);
      Matroid rest = m.remove(d);
      if (rest.rank() < 2) continue;
      for (int k = 0; k <= k_max; ++k) {
        long long qd = pg_size(q, rest.rank() + k) - rest.size();
        if (qd < 0 || qd % q != 0) continue;
        long long dd = qd / q;
        if (dd > (ipow(q, 2 * k) - 1) / (static_cast<long long>(q) * q - 1))
          continue;
        auto cert = search(rest, k);
        if (cert) return StripResult{d, k, *cert};
      }
    }
  }
  return std::nullopt;
}

}  // namespace matgrow
