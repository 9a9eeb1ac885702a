#include "matgrow/verify.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "matgrow/classes.hpp"
#include "matgrow/geometry.hpp"
#include "matgrow/growth.hpp"
#include "matgrow/io.hpp"
#include "matgrow/modsum.hpp"
#include "matgrow/projection.hpp"

namespace matgrow {

namespace {

constexpr uint64_t kBaseSeed = 0x4d475257;  // fixed generator seed base

struct Ctx {
  SuiteResult res;
  const SuiteOptions* opts;

  bool check(bool cond, const std::string& msg,
             const std::function<std::string()>& dump = nullptr) {
    ++res.checks;
    if (cond || !res.pass) return cond;
    if (!cond && res.pass) {
      res.pass = false;
      res.detail = msg;
      if (dump) {
        std::string path =
            opts->dump_dir + "/counterexample-" + res.name + ".txt";
        std::ofstream out(path);
        if (out) {
          out << dump();
          res.counterexample_path = path;
        }
      }
    }
    return cond;
  }
};

Matroid nonfano() {
  Matroid f = pg(3, 2);
  Bits line = flats_of_rank(f, 2).front();
  std::vector<Bits> bases;
  for (unsigned sub = 0; sub < (1u << 7); ++sub) {
    if (__builtin_popcount(sub) != 3) continue;
    Bits b;
    for (int i = 0; i < 7; ++i)
      if (sub >> i & 1) b.set(i);
    if (f.rank(b) == 3 || b == line) bases.push_back(b);
  }
  return Matroid::from_bases(7, bases, "nonfano");
}

Matroid with_loop() {
  GFMatrix m(2, 4);
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  m.at(0, 2) = 1;
  m.at(1, 2) = 1;  // fourth column zero: a loop
  return Matroid::linear(Field::get(2), m, "loopy");
}

std::vector<Matroid> fixture_corpus() {
  Matroid f = pg(3, 2);
  return {
      Matroid::uniform(0, 0),  Matroid::uniform(1, 1),
      Matroid::uniform(1, 3),  Matroid::uniform(2, 3),
      Matroid::uniform(2, 4),  Matroid::uniform(2, 5),
      Matroid::uniform(3, 4),  Matroid::uniform(3, 6),
      f,                       nonfano(),
      f.truncate(),            f.contract(Bits::single(0)),
      ag(3, 2),                with_loop(),
      direct_sum(Matroid::uniform(2, 3), Matroid::uniform(1, 1)),
  };
}

// reference minor test: all contraction/deletion splits plus isomorphism
bool naive_has_minor(const Matroid& host, const Matroid& pattern) {
  auto els = host.ground().elems();
  int n = static_cast<int>(els.size());
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    long long x = code;
    Bits c, d;
    for (int i = 0; i < n; ++i) {
      int digit = static_cast<int>(x % 3);
      x /= 3;
      if (digit == 1) c.set(els[i]);
      if (digit == 2) d.set(els[i]);
    }
    if (host.size() - c.count() - d.count() != pattern.size()) continue;
    Matroid minor = host.minorize(c, d);
    if (minor.rank() != pattern.rank()) continue;
    if (is_isomorphic(minor, pattern)) return true;
  }
  return false;
}

void suite_kernel_axioms(Ctx& ctx) {
  // field arithmetic, exhaustively over all triples
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    const Field& f = Field::get(q);
    bool ok = true;
    for (int a = 0; a < q && ok; ++a)
      for (int b = 0; b < q && ok; ++b)
        for (int c = 0; c < q && ok; ++c) {
          if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) ok = false;
          if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) ok = false;
          if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)))
            ok = false;
        }
    for (int a = 1; a < q && ok; ++a)
      if (f.mul(a, f.inv(static_cast<uint8_t>(a))) != 1) ok = false;
    ctx.check(ok, "field axiom failure at order " + std::to_string(q));
  }

  auto corpus = fixture_corpus();
  for (const Matroid& m : corpus) {
    if (m.size() > 12) continue;
    bool ok = true;
    std::string what;
    try {
      validate_axioms(m);
    } catch (const std::invalid_argument& e) {
      ok = false;
      what = e.what();
    }
    ctx.check(ok, "rank axioms: " + what,
              [&] { return format_matroid(m, m.name()); });
  }
  // derived constructions stay matroids
  Matroid f = pg(3, 2);
  for (const Matroid& m :
       {f.truncate(), f.contract(Bits::of({0, 1})),
        extend(f, ModularCut::principal(f, flats_of_rank(f, 2)[3]))}) {
    bool ok = true;
    try {
      validate_axioms(m);
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    ctx.check(ok, "rank axioms on derived matroid");
  }

  // minor oracle against the unpruned reference on every fixture pair
  for (const Matroid& host : corpus) {
    if (host.size() > 7) continue;
    for (const Matroid& pat : corpus) {
      if (pat.size() > host.size()) continue;
      bool fast = has_minor(host, pat).has_value();
      bool slow = naive_has_minor(host, pat);
      ctx.check(fast == slow,
                "minor oracle disagrees with reference on " + host.name() +
                    " vs " + pat.name(),
                [&] {
                  return format_matroid(host, host.name()) +
                         format_matroid(pat, pat.name());
                });
      if (!ctx.res.pass) return;
    }
  }
}

ProjectionCertificate seeded_cert(int q, int k, int r, uint64_t idx) {
  return seeded_projection(q, k, r, kBaseSeed + idx);
}

void suite_density(Ctx& ctx) {
  for (int q : {2, 3}) {
    for (int k = 1; k <= 2; ++k) {
      for (uint64_t i = 0; i < ctx.opts->seeds; ++i) {
        int r = 2 + static_cast<int>(i % 3);
        ProjectionCertificate cert = seeded_cert(q, k, r, i * 17 + k * 5 + q);
        DensityReport dr;
        try {
          dr = density_params(cert);
        } catch (const std::runtime_error& e) {
          ctx.check(false, std::string("density decomposition: ") + e.what(),
                    [&] { return format_certificate(cert); });
          return;
        }
        bool ok = dr.d >= 0 && dr.in_bound && dr.floor_ok &&
                  dr.eps + dr.d_raw == pg_size(q, r + k);
        if (!ctx.check(ok, "density bounds failed (q=" + std::to_string(q) +
                               " k=" + std::to_string(k) +
                               " r=" + std::to_string(r) + ")",
                       [&] { return format_certificate(cert); }))
          return;
        for (int kp = 0; kp <= k; ++kp) {
          bool sub_ok = true;
          std::string what;
          try {
            ProjectionCertificate sub = spanning_subprojection(cert, kp);
            sub_ok = sub.k == kp && sub.projected.rank() == r;
          } catch (const std::exception& e) {
            sub_ok = false;
            what = e.what();
          }
          if (!ctx.check(sub_ok, "spanning subprojection failed at k'=" +
                                     std::to_string(kp) + ": " + what,
                         [&] { return format_certificate(cert); }))
            return;
        }
      }
    }
  }
}

void suite_localrep(Ctx& ctx) {
  uint64_t per = std::max<uint64_t>(2, ctx.opts->seeds / 25);
  for (int q : {2, 3}) {
    for (int k = 1; k <= 2; ++k) {
      for (int r = 2; r <= 4; ++r) {
        if (q == 3 && r + k > 5) continue;  // runtime regime
        for (uint64_t i = 0; i < per; ++i) {
          ProjectionCertificate cert =
              seeded_cert(q, k, r, 7000 + i * 13 + k * 3 + q + r * 101);
          int level = 0;
          bool ok = true;
          std::string what;
          try {
            level = local_rep_level(cert);
          } catch (const std::runtime_error& e) {
            ok = false;
            what = e.what();
          }
          if (!ctx.check(ok, "local representability routes disagree: " + what,
                         [&] { return format_certificate(cert); }))
            return;
          if (level >= 2) {
            DensityReport dr = density_params(cert);
            if (!ctx.check(dr.d == 0,
                           "level >= 2 certificate with nonzero density defect",
                           [&] { return format_certificate(cert); }))
              return;
          }
        }
      }
    }
  }
}

void suite_generic(Ctx& ctx) {
  uint64_t per = std::max<uint64_t>(2, ctx.opts->seeds / 40);
  for (int q : {2, 3}) {
    for (int k = 1; k <= 2; ++k) {
      for (int r = 2; r <= 4; ++r) {
        if (q == 3 && r + k > 5) continue;
        for (uint64_t i = 0; i < per; ++i) {
          ProjectionCertificate cert =
              seeded_cert(q, k, r, 9000 + i * 29 + k * 7 + q + r * 211);
          DensityReport dr = density_params(cert);
          SensitiveReport sr = sensitive_elements(cert);
          if (!ctx.check(sr.small_bound_ok,
                         "sensitive set too dense for the generic-point bound",
                         [&] { return format_certificate(cert); }))
            return;
          const Matroid& m = cert.projected;
          Bits rest = m.ground() - sr.sensitive;
          for (int e = rest.lowest(); e >= 0; e = rest.next(e + 1)) {
            Matroid me = m.contract(Bits::single(e));
            long long defect = pg_size(q, me.rank() + k) - epsilon(me);
            bool ok = defect >= 0 && defect % q == 0 && defect / q == dr.d;
            if (!ctx.check(ok,
                           "density defect changed on a generic contraction",
                           [&] { return format_certificate(cert); }))
              return;
          }
        }
      }
    }
  }
}

void suite_flatpartition(Ctx& ctx) {
  // exact minimum partition sizes, against the growth bound 2^{n/2-1}
  const int expected[5] = {0, 0, 3, 5, 5};
  for (int n = 2; n <= 4; ++n) {
    int v = flat_partition_min(pg(n, 2));
    long long bound_sq = ipow(2, n - 2);  // (2^{n/2-1})^2
    ctx.check(static_cast<long long>(v) * v > bound_sq,
              "flat partition minimum does not beat the bound at n=" +
                  std::to_string(n));
    ctx.check(v == expected[n],
              "flat partition minimum changed at n=" + std::to_string(n) +
                  ": got " + std::to_string(v));
  }
}

void suite_recognise(Ctx& ctx) {
  uint64_t per = std::max<uint64_t>(2, ctx.opts->seeds / 40);
  Rng rng(kBaseSeed ^ 0x5eed);
  int perturb_total = 0, perturb_failed = 0;
  for (int q : {2, 3}) {
    for (int k = 1; k <= 2; ++k) {
      for (int r = 2; r <= 4; ++r) {
        // flat enumeration on the projection bounds the sample sizes
        if (q == 2 && r + k > 5) continue;
        if (q == 3 && r + k > 4) continue;
        for (uint64_t i = 0; i < per; ++i) {
          ProjectionCertificate cert =
              seeded_cert(q, k, r, 11000 + i * 31 + k * 11 + q + r * 307);
          Matroid s = simplify(cert.projected).first;
          std::vector<int> phi = quotient_map(cert);
          bool tri = false, quo = false;
          std::string what;
          try {
            tri = triangle_compatible(phi, cert.geometry, s, q);
            quo = is_quotient(cert.projected, cert.geometry);
          } catch (const std::exception& e) {
            what = e.what();
          }
          if (!ctx.check(tri, "fiber map fails the triangle criterion " + what,
                         [&] { return format_certificate(cert); }))
            return;
          if (!ctx.check(quo, "projection fails the quotient criterion",
                         [&] { return format_certificate(cert); }))
            return;
          // perturbations: swap two images (rank >= 3 keeps collinearity
          // informative)
          if (r >= 3 && perturb_total < 100) {
            auto els = cert.geometry.ground().elems();
            for (int t = 0; t < 10 && perturb_total < 100; ++t) {
              int a = els[rng.below(els.size())];
              int b = els[rng.below(els.size())];
              if (phi[a] == phi[b]) continue;
              std::vector<int> bad = phi;
              std::swap(bad[a], bad[b]);
              ++perturb_total;
              bool ok = false;
              try {
                ok = triangle_compatible(bad, cert.geometry, s, q);
              } catch (const std::exception&) {
                ok = false;
              }
              if (!ok) ++perturb_failed;
            }
          }
        }
      }
    }
  }
  ctx.check(perturb_total >= 100,
            "not enough perturbation trials: " + std::to_string(perturb_total));
  ctx.check(perturb_failed * 100 >= 95 * perturb_total,
            "perturbed maps passed the triangle criterion too often: " +
                std::to_string(perturb_failed) + "/" +
                std::to_string(perturb_total));
}

void suite_modsum(Ctx& ctx) {
  Matroid f = pg(3, 2);
  // two geometries glued along a point: 13 elements, rank 5
  {
    std::vector<int> rmap(7);
    rmap[0] = 0;
    for (int e = 1; e < 7; ++e) rmap[e] = 6 + e;
    Matroid right = relabel(pg(3, 2), rmap, 13);
    SumSpec spec{f, right, Bits::single(0)};
    Matroid sum = modular_sum(spec);
    ctx.check(sum.size() == 13 && sum.rank() == 5,
              "point-glued sum has wrong shape");
    // restriction preservation, exhaustively
    auto check_side = [&](const Matroid& side) {
      auto els = side.ground().elems();
      size_t total = size_t{1} << els.size();
      for (size_t ms = 0; ms < total; ++ms) {
        Bits x;
        for (size_t j = 0; j < els.size(); ++j)
          if (ms >> j & 1) x.set(els[j]);
        if (sum.rank(x) != side.rank(x)) return false;
      }
      return true;
    };
    ctx.check(check_side(f) && check_side(right),
              "point-glued sum does not restrict to its parts");
  }
  // glued along a line: 11 elements, rank 4
  {
    Bits line = flats_of_rank(f, 2).front();
    auto lel = line.elems();
    std::vector<int> rmap(7, -1);
    // map a line of the right copy onto `line`
    Bits rline = flats_of_rank(f, 2).front();
    auto rel = rline.elems();
    int next = 7;
    for (int e = 0; e < 7; ++e) {
      auto it = std::find(rel.begin(), rel.end(), e);
      if (it != rel.end())
        rmap[e] = lel[it - rel.begin()];
      else
        rmap[e] = next++;
    }
    Matroid right = relabel(pg(3, 2), rmap, next);
    SumSpec spec{f, right, line};
    Matroid sum = modular_sum(spec);
    bool ok = sum.size() == 11 && sum.rank() == 4;
    ok = ok && is_isomorphic(sum.restrict_to(right.ground()), f).has_value();
    ctx.check(ok, "line-glued sum has wrong shape");
    if (sum.size() <= 12) {
      bool axioms = true;
      try {
        validate_axioms(sum);
      } catch (const std::invalid_argument&) {
        axioms = false;
      }
      ctx.check(axioms, "line-glued sum violates the rank axioms");
    }
    auto check_side = [&](const Matroid& side) {
      auto els = side.ground().elems();
      size_t total = size_t{1} << els.size();
      for (size_t ms = 0; ms < total; ++ms) {
        Bits x;
        for (size_t j = 0; j < els.size(); ++j)
          if (ms >> j & 1) x.set(els[j]);
        if (sum.rank(x) != side.rank(x)) return false;
      }
      return true;
    };
    ctx.check(check_side(f) && check_side(right),
              "line-glued sum does not restrict to its parts");
  }
  // modular flats
  ctx.check(is_modular_flat(f, flats_of_rank(f, 2)[2]),
            "geometry line should be modular");
  ctx.check(is_modular_flat(f, f.ground()), "full ground should be modular");
  Matroid u34 = Matroid::uniform(3, 4);
  ctx.check(!is_modular_flat(u34, Bits::of({0, 1})),
            "2-point flat of U_{3,4} should not be modular");
  // degenerate containment
  {
    Matroid sub = f.restrict_to(flats_of_rank(f, 2).front());
    SumSpec spec{f, sub, sub.ground()};
    ctx.check(rank_equal(modular_sum(spec), f),
              "contained sum should return the host");
  }
}

void suite_sumexclude(Ctx& ctx) {
  Matroid u27 = Matroid::uniform(2, 7);  // the rank-3 binary truncation image
  struct Instance {
    int r, n;
    Matroid pattern;
    std::string label;
  };
  std::vector<Instance> instances = {
      {2, 3, Matroid::uniform(2, 4), "r2n3-u24"},
      {2, 4, Matroid::uniform(2, 4), "r2n4-u24"},
      {3, 4, Matroid::uniform(2, 4), "r3n4-u24"},
      {4, 4, Matroid::uniform(2, 4), "r4n4-u24"},
      {2, 3, Matroid::uniform(2, 5), "r2n3-u25"},
      {2, 4, Matroid::uniform(2, 5), "r2n4-u25"},
      {3, 4, Matroid::uniform(2, 5), "r3n4-u25"},
      {3, 4, Matroid::uniform(3, 5), "r3n4-u35"},
      {3, 4, nonfano(), "r3n4-nonfano"},
      {3, 4, Matroid::uniform(3, 6), "r3n4-u36"},
      {2, 5, Matroid::uniform(2, 4), "r2n5-u24"},
  };
  for (const auto& inst : instances) {
    Matroid m = pg(inst.r, 2);
    // hypotheses: the geometry member avoids the pattern and the rank-2
    // truncation image
    if (!ctx.check(!has_minor(m, inst.pattern).has_value(),
                   inst.label + ": base matroid already has the minor"))
      return;
    if (!ctx.check(!has_minor(m, u27).has_value(),
                   inst.label + ": base matroid has the truncation image"))
      return;
    Matroid sum = geometry_extend(m, m.ground(), inst.n, 2);
    bool none = !has_minor(sum, inst.pattern).has_value();
    if (!ctx.check(none, inst.label + ": extension gained the excluded minor",
                   [&] { return format_matroid(sum, inst.label); }))
      return;
  }
}

void suite_subfield(Ctx& ctx) {
  const Field& f4 = Field::get(4);
  auto line_matroid = [&](std::vector<uint8_t> second_row) {
    GFMatrix m(2, static_cast<int>(second_row.size()) );
    for (size_t c = 0; c < second_row.size(); ++c) {
      m.at(0, c) = second_row[c] == 9 ? 0 : 1;  // 9 marks the (0,1) column
      m.at(1, c) = second_row[c] == 9 ? 1 : second_row[c];
    }
    return Matroid::linear(f4, m);
  };
  // rank-2 GF(4) matroids containing the binary line {(1,0),(0,1),(1,1)}
  std::vector<std::pair<Matroid, std::string>> instances = {
      {line_matroid({0, 9, 1, 2}), "u24"},
      {line_matroid({0, 9, 1, 2, 3}), "u25"},
      {line_matroid({0, 9, 1, 2, 2}), "u24-parallel"},
      {line_matroid({0, 9, 1, 2, 3, 3}), "u25-parallel"},
      {line_matroid({0, 9, 1, 2, 2, 0}), "u24-two-parallel"},
  };
  for (auto& [m, label] : instances) {
    Bits f = Bits::of({0, 1, 2});  // the binary line
    if (!ctx.check(is_representable(m, 4), label + ": base not GF(4)"))
      return;
    Matroid sum = geometry_extend(m, f, 3, 2);
    if (!ctx.check(sum.size() == m.size() + 4,
                   label + ": sum has unexpected size"))
      return;
    bool rep = false;
    try {
      rep = is_representable(sum, 4);
    } catch (const std::invalid_argument&) {
      rep = false;
    }
    if (!ctx.check(rep, label + ": sum lost GF(4) representability",
                   [&] { return format_matroid(sum, label); }))
      return;
  }
}

void suite_growth(Ctx& ctx) {
  ClassSpec binary;
  binary.fields = {2};
  binary.name = "binary";
  for (int n = 1; n <= 4; ++n) {
    HResult h = h_exhaustive(binary, n);
    bool ok = h.exact && h.value == pg_size(2, n);
    if (ok && n <= 4) {
      bool witness_ok = false;
      for (const Matroid& w : h.witnesses)
        if (w.size() <= 20 && is_isomorphic(w, pg(n, 2))) witness_ok = true;
      ok = witness_ok;
    }
    if (!ctx.check(ok, "binary growth value wrong at n=" + std::to_string(n)))
      return;
  }

  ClassSpec no_u24;
  no_u24.excluded = {Matroid::uniform(2, 4)};
  no_u24.name = "ex-u24";
  for (int n = 1; n <= 3; ++n) {
    HResult h = h_exhaustive(no_u24, n);
    bool ok = h.exact && h.value == pg_size(2, n);
    if (ok && n == 3) {
      bool witness_ok = false;
      for (const Matroid& w : h.witnesses)
        if (w.size() == 7 && is_isomorphic(w, pg(3, 2))) witness_ok = true;
      ok = witness_ok;
    }
    if (!ctx.check(ok, "line-free growth value wrong at n=" + std::to_string(n)))
      return;
  }

  SearchReport rep = kd_search(binary, 3, 1, ctx.opts->budget);
  ctx.check(rep.found && !rep.truncated, "profile search did not complete");
  ctx.check(rep.profile.k == 0 && rep.profile.d == 0,
            "profile search found unexpected cell (k=" +
                std::to_string(rep.profile.k) + ", d=" +
                std::to_string(rep.profile.d) + ")");
  HResult h3 = h_exhaustive(binary, 3);
  ctx.check(h3.value >= grf_formula(2, rep.profile.k, rep.profile.d, 3),
            "exhaustive value below the profile formula");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "density-3.2",  "generic-3.x",   "localrep-3.x", "flatpartition-3.1",
      "recognise-3.x", "modsum",       "sumexclude-7.x", "subfield-7.x",
      "growth-7.1",   "kernel-axioms",
  };
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& ns = suite_names();
  return std::find(ns.begin(), ns.end(), name) != ns.end();
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  if (!is_suite_name(name))
    throw std::invalid_argument("unknown verification suite: " + name);
  Ctx ctx;
  ctx.res.name = name;
  ctx.res.pass = true;
  ctx.opts = &opts;
  if (name == "kernel-axioms") suite_kernel_axioms(ctx);
  if (name == "density-3.2") suite_density(ctx);
  if (name == "localrep-3.x") suite_localrep(ctx);
  if (name == "generic-3.x") suite_generic(ctx);
  if (name == "flatpartition-3.1") suite_flatpartition(ctx);
  if (name == "recognise-3.x") suite_recognise(ctx);
  if (name == "modsum") suite_modsum(ctx);
  if (name == "sumexclude-7.x") suite_sumexclude(ctx);
  if (name == "subfield-7.x") suite_subfield(ctx);
  if (name == "growth-7.1") suite_growth(ctx);
  if (ctx.res.pass && ctx.res.detail.empty())
    ctx.res.detail = std::to_string(ctx.res.checks) + " checks";
  return ctx.res;
}

}  // namespace matgrow
