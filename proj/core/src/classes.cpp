#include "matgrow/classes.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "matgrow/io.hpp"

namespace matgrow {

namespace {

// signature used to memoize contractions that cannot host the pattern
struct ContractionSig {
  int rank;
  long long eps;
  std::vector<int> class_sizes;
  bool operator<(const ContractionSig& o) const {
    if (rank != o.rank) return rank < o.rank;
    if (eps != o.eps) return eps < o.eps;
    return class_sizes < o.class_sizes;
  }
};

ContractionSig signature(const Matroid& m) {
  ContractionSig s;
  s.rank = m.rank();
  auto classes = parallel_classes(m);
  s.eps = static_cast<long long>(classes.size());
  for (const Bits& c : classes) s.class_sizes.push_back(c.count());
  std::sort(s.class_sizes.begin(), s.class_sizes.end());
  return s;
}

// injective rank-preserving embedding of the pattern into the host
struct EmbedSearch {
  const Matroid* host;
  const Matroid* pat;
  std::vector<int> pe;  // pattern elements
  std::vector<int> map;
  Bits used;
  bool found = false;

  bool consistent(int depth) {
    Bits xp = Bits::single(pe[depth]);
    Bits xh = Bits::single(map[pe[depth]]);
    if (pat->rank(xp) != host->rank(xh)) return false;
    for (int i = 0; i < depth; ++i) {
      Bits pp = xp.with(pe[i]), hh = xh.with(map[pe[i]]);
      if (pat->rank(pp) != host->rank(hh)) return false;
      for (int j = i + 1; j < depth; ++j)
        if (pat->rank(pp.with(pe[j])) != host->rank(hh.with(map[pe[j]])))
          return false;
    }
    return true;
  }

  bool leaf_check() {
    auto els = pe;
    size_t total = size_t{1} << els.size();
    for (size_t ms = 0; ms < total; ++ms) {
      Bits xp, xh;
      for (size_t i = 0; i < els.size(); ++i)
        if (ms >> i & 1) {
          xp.set(els[i]);
          xh.set(map[els[i]]);
        }
      if (pat->rank(xp) != host->rank(xh)) return false;
    }
    return true;
  }

  void rec(int depth) {
    if (found) return;
    if (depth == static_cast<int>(pe.size())) {
      if (leaf_check()) found = true;
      return;
    }
    const Bits& hg = host->ground();
    for (int h = hg.lowest(); h >= 0 && !found; h = hg.next(h + 1)) {
      if (used.test(h)) continue;
      map[pe[depth]] = h;
      used.set(h);
      if (consistent(depth)) rec(depth + 1);
      used.reset(h);
      if (!found) map[pe[depth]] = -1;
    }
  }
};

std::optional<std::vector<int>> embed_restriction(const Matroid& host,
                                                  const Matroid& pattern) {
  EmbedSearch s;
  s.host = &host;
  s.pat = &pattern;
  s.pe = pattern.ground().elems();
  s.map.assign(pattern.slots(), -1);
  s.rec(0);
  if (!s.found) return std::nullopt;
  return s.map;
}

}  // namespace

std::optional<MinorWitness> has_minor(const Matroid& host,
                                      const Matroid& pattern) {
  int c = host.rank() - pattern.rank();
  long long extra = host.size() - c - pattern.size();
  if (c < 0 || extra < 0) return std::nullopt;

  // uniform rank-2 pattern shortcut: a contraction with enough points
  bool line_pattern = pattern.rank() == 2 &&
                      epsilon(pattern) == pattern.size();
  if (line_pattern) {
    auto lines = flats_of_rank(pattern, 2);
    line_pattern = lines.size() == 1;  // a single line: U_{2,m}
  }

  std::set<ContractionSig> failed;
  std::optional<MinorWitness> result;

  std::function<void(Bits, int)> rec = [&](Bits contr, int last) {
    if (result) return;
    if (contr.count() == c) {
      Matroid quot = host.contract(contr);
      if (line_pattern) {
        auto classes = parallel_classes(quot);
        if (static_cast<int>(classes.size()) < pattern.size()) return;
        MinorWitness w;
        w.contracted = contr;
        auto pe = pattern.ground().elems();
        w.map.assign(pattern.slots(), -1);
        Bits image;
        for (size_t i = 0; i < pe.size(); ++i) {
          w.map[pe[i]] = classes[i].lowest();
          image.set(classes[i].lowest());
        }
        w.deleted = host.ground() - contr - image;
        result = w;
        return;
      }
      ContractionSig sig = signature(quot);
      if (failed.count(sig)) return;
      if (sig.eps < epsilon(pattern)) {
        failed.insert(sig);
        return;
      }
      auto emb = embed_restriction(quot, pattern);
      if (emb) {
        MinorWitness w;
        w.contracted = contr;
        w.map = *emb;
        Bits image;
        for (int e : pattern.ground().elems()) image.set((*emb)[e]);
        w.deleted = host.ground() - contr - image;
        result = w;
      } else {
        failed.insert(sig);
      }
      return;
    }
    const Bits& hg = host.ground();
    for (int e = hg.next(last + 1); e >= 0 && !result; e = hg.next(e + 1)) {
      Bits nc = contr.with(e);
      if (host.rank(nc) != nc.count()) continue;  // contractions independent
      rec(nc, e);
    }
  };
  rec(Bits(), -1);
  return result;
}

bool is_representable(const Matroid& m, int q) {
  const Field& f = Field::get(q);
  // representability is invariant under simplification
  Matroid s = simplify(m).first;
  int r = s.rank();
  if (r <= 1) return true;
  long long n = s.size();
  if (r == 2) return n <= q + 1;
  if (n > pg_size(q, r)) return false;
  // a matroid literally represented over a subfield qualifies at once
  if (const LinearData* ld = m.linear_data())
    if (ld->field->subfield_of(f)) return true;
  if (n > 13)
    throw std::invalid_argument("is_representable: search regime exceeded");

  // pin a greedy basis to identity columns; remaining columns are normalized
  auto els = s.ground().elems();
  std::vector<int> order;
  Bits basis;
  for (int e : els)
    if (s.rank(basis.with(e)) > s.rank(basis)) {
      basis.set(e);
      order.push_back(e);
    }
  for (int e : els)
    if (!basis.test(e)) order.push_back(e);

  auto candidates = projective_points(f, r);
  std::vector<std::array<uint8_t, 8>> assign(s.slots());
  int nel = static_cast<int>(order.size());

  // rank agreement between the matroid and the assigned columns on a subset
  auto vec_rank = [&](const Bits& x) {
    VecSpan sp;
    sp.init(f, r);
    for (int e = x.lowest(); e >= 0; e = x.next(e + 1))
      sp.insert(assign[e].data());
    return sp.rank();
  };

  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == nel) {
      // full verification
      size_t total = size_t{1} << nel;
      for (size_t ms = 0; ms < total; ++ms) {
        Bits x;
        for (int i = 0; i < nel; ++i)
          if (ms >> i & 1) x.set(order[i]);
        if (s.rank(x) != vec_rank(x)) return false;
      }
      return true;
    }
    int e = order[depth];
    if (depth < r) {
      // basis element -> unit column
      assign[e] = {};
      assign[e][depth] = 1;
      return rec(depth + 1);
    }
    for (const auto& cand : candidates) {
      std::array<uint8_t, 8> v{};
      for (int i = 0; i < r; ++i) v[i] = cand[i];
      assign[e] = v;
      // incremental consistency on small subsets through e
      bool ok = true;
      for (int i = 0; i < depth && ok; ++i) {
        Bits p = Bits::of({e, order[i]});
        if (s.rank(p) != vec_rank(p)) ok = false;
        for (int j = i + 1; j < depth && ok; ++j) {
          Bits t = p.with(order[j]);
          if (s.rank(t) != vec_rank(t)) ok = false;
          for (int l = j + 1; l < depth && ok && r >= 4; ++l) {
            Bits quad = t.with(order[l]);
            if (s.rank(quad) != vec_rank(quad)) ok = false;
          }
        }
      }
      if (ok && rec(depth + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

bool class_membership(const ClassSpec& spec, const Matroid& m) {
  for (int q : spec.fields) {
    try {
      if (!is_representable(m, q)) return false;
    } catch (const std::invalid_argument& e) {
      throw BudgetError(std::string("class_membership: ") + e.what());
    }
  }
  for (const Matroid& n : spec.excluded)
    if (has_minor(m, n)) return false;
  return true;
}

ClassParams class_params(const ClassSpec& spec) {
  if (spec.fields.empty() && spec.excluded.empty())
    throw std::invalid_argument("class_params: class must be constrained");
  ClassParams p;
  // q: largest supported order below every field, avoiding representable
  // exclusions
  std::vector<int> supported = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
  int best_q = 0;
  for (int q : supported) {
    bool common = true;
    for (int fq : spec.fields)
      if (!Field::get(q).subfield_of(Field::get(fq))) common = false;
    if (!common) continue;
    bool excluded_rep = false;
    for (const Matroid& n : spec.excluded)
      if (is_representable(n, q)) excluded_rep = true;
    if (!excluded_rep) best_q = std::max(best_q, q);
  }
  if (best_q == 0)
    throw std::invalid_argument(
        "class_params: no common base order (fields share no subfield, or "
        "every candidate has a representable exclusion)");
  p.q = best_q;

  p.s = 0;
  for (const Matroid& n : spec.excluded) p.s = std::max(p.s, n.rank());

  p.ell = 0;
  for (int l = 2; l <= 62; ++l) {
    if (!class_membership(spec, Matroid::uniform(2, l + 2))) {
      p.ell = l;
      break;
    }
  }
  if (p.ell == 0)
    throw BudgetError("class_params: no finite line bound within budget");

  if (!spec.fields.empty())
    p.trunc_excluded = *std::min_element(spec.fields.begin(), spec.fields.end());
  else if (!spec.excluded.empty())
    p.trunc_excluded = p.s;
  return p;
}

ClassSpec parse_class_spec(std::istream& in, const std::string& base_dir) {
  ClassSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "fields") {
      int q;
      while (ls >> q) spec.fields.push_back(q);
    } else if (kw == "excluded") {
      std::string path;
      while (ls >> path) {
        std::string full =
            path.empty() || path[0] == '/' ? path : base_dir + "/" + path;
        spec.excluded.push_back(load_matroid(full));
      }
    } else if (kw == "budget") {
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq != std::string::npos && kv.substr(0, eq) == "nodes")
          spec.caps.nodes = std::stoull(kv.substr(eq + 1));
      }
    } else if (kw[0] == '#') {
      continue;
    } else {
      throw std::invalid_argument("class spec: unknown keyword '" + kw + "'");
    }
  }
  return spec;
}

std::string format_class_spec(const ClassSpec& spec,
                              const std::vector<std::string>& excluded_paths) {
  std::ostringstream os;
  if (!spec.fields.empty()) {
    os << "fields";
    for (int q : spec.fields) os << ' ' << q;
    os << "\n";
  }
  if (!excluded_paths.empty()) {
    os << "excluded";
    for (const auto& p : excluded_paths) os << ' ' << p;
    os << "\n";
  }
  os << "budget nodes=" << spec.caps.nodes << "\n";
  return os.str();
}

}  // namespace matgrow
