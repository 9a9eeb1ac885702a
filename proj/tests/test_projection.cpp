#include <doctest.h>

#include <set>

#include "matgrow/classes.hpp"
#include "matgrow/io.hpp"
#include "matgrow/projection.hpp"
#include "matgrow/util.hpp"

using namespace matgrow;

namespace {

ProjectionCertificate trunc_cert(int n, int q) {
  Matroid g = pg(n, q);
  return project(g, q, {ModularCut::whole(g)});
}

ProjectionCertificate line_cert(int n) {
  Matroid g = pg(n, 2);
  Bits line = flats_of_rank(g, 2).front();
  return project(g, 2, {ModularCut::principal(g, line)});
}

ProjectionCertificate trivial_cert(const Matroid& g, int q) {
  return project(g, q, {});
}

// independent oracle: minimum number of blocks over all set partitions into
// flats, found by direct Bell-style enumeration
int brute_partition_min(const Matroid& g) {
  auto els = g.ground().elems();
  int n = static_cast<int>(els.size());
  int best = n + 1;
  std::vector<Bits> blocks;
  std::function<void(int)> rec = [&](int idx) {
    if (static_cast<int>(blocks.size()) >= best) return;
    if (idx == n) {
      if (blocks.size() < 2) return;
      for (const Bits& b : blocks)
        if (g.closure(b) != b) return;
      best = static_cast<int>(blocks.size());
      return;
    }
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      blocks[bi].set(els[idx]);
      rec(idx + 1);
      blocks[bi].reset(els[idx]);
    }
    blocks.push_back(Bits::single(els[idx]));
    rec(idx + 1);
    blocks.pop_back();
  };
  rec(0);
  return best;
}

}  // namespace

TEST_SUITE("projection") {
  TEST_CASE("density of the truncation certificate") {
    auto cert = trunc_cert(4, 2);
    auto dr = density_params(cert);
    CHECK(dr.k == 1);
    CHECK(dr.d == 0);
    CHECK(dr.eps == 15);
    CHECK(dr.in_bound);
    CHECK(dr.floor_ok);
  }

  TEST_CASE("density of the principal line certificate") {
    auto cert = line_cert(3);
    auto dr = density_params(cert);
    CHECK(dr.k == 1);
    CHECK(dr.eps == 5);
    CHECK(dr.d == 1);
    CHECK(dr.in_bound);  // d <= (2^2-1)/(2^2-1) = 1
  }

  TEST_CASE("density with no contractions") {
    auto cert = trivial_cert(pg(3, 2), 2);
    auto dr = density_params(cert);
    CHECK(dr.k == 0);
    CHECK(dr.d == 0);
    CHECK(dr.eps == 7);
  }

  TEST_CASE("spanning subprojections") {
    auto cert = trunc_cert(4, 2);
    // k' = k: certificate of the same shape
    auto same = spanning_subprojection(cert, 1);
    CHECK(same.k == 1);
    CHECK(same.projected.rank() == 3);
    // k' = 0: a geometry restriction spanning the truncation
    auto flat = spanning_subprojection(cert, 0);
    CHECK(flat.k == 0);
    CHECK(flat.projected.rank() == 3);
    CHECK(epsilon(flat.projected) == 7);

    auto lc = line_cert(3);
    auto lc0 = spanning_subprojection(lc, 0);
    CHECK(lc0.k == 0);
    CHECK(lc0.projected.rank() == 2);
    CHECK(epsilon(lc0.projected) == 3);

    CHECK_THROWS_AS(spanning_subprojection(cert, 2), std::invalid_argument);
  }

  TEST_CASE("sensitive elements") {
    // no contraction: nothing is sensitive
    auto triv = trivial_cert(pg(3, 2), 2);
    auto sr = sensitive_elements(triv);
    CHECK(sr.sensitive.empty());
    CHECK(sr.small_bound_ok);

    // truncation: contracting any point keeps the defect at zero
    auto tc = trunc_cert(4, 2);
    auto sr2 = sensitive_elements(tc);
    CHECK(sr2.sensitive.empty());
    CHECK(sr2.small_bound_ok);

    // principal line in a rank-4 geometry: exactly the collapsed class
    auto lc = line_cert(4);
    auto sr3 = sensitive_elements(lc);
    Bits line = flats_of_rank(lc.geometry, 2).front();
    CHECK(sr3.sensitive == line);
    CHECK(sr3.small_bound_ok);
    CHECK(sr3.eps_restricted == 1);  // the class is one point of the projection
  }

  TEST_CASE("local representability level") {
    CHECK(local_rep_level(trunc_cert(4, 2)) == 2);
    CHECK(local_rep_level(line_cert(3)) == 1);
    // geometry restriction: fully representable, capped at r - 1
    auto triv = trivial_cert(pg(4, 2), 2);
    CHECK(local_rep_level(triv) == 3);
  }

  TEST_CASE("flat partition minimum with an independent oracle") {
    CHECK(flat_partition_min(pg(2, 2)) == 3);
    int fano_min = flat_partition_min(pg(3, 2));
    CHECK(fano_min == brute_partition_min(pg(3, 2)));
    CHECK(fano_min == 5);
    CHECK(flat_partition_min(pg(4, 2)) == 5);  // a line spread attains it
    // bound: strictly above 2^{n/2 - 1}
    for (int n = 2; n <= 4; ++n) {
      long long v = flat_partition_min(pg(n, 2));
      CHECK(v * v > ipow(2, n - 2));
    }
    CHECK_THROWS_AS(flat_partition_min(pg(5, 2)), std::invalid_argument);
  }

  TEST_CASE("skew sunflowers") {
    Matroid f = pg(3, 2);
    auto pts = flats_of_rank(f, 1);
    auto w1 = skew_sunflower(f, {pts[0], pts[2], pts[4], pts[5]}, 2);
    REQUIRE(w1.has_value());
    CHECK(w1->core.empty());
    CHECK(w1->flats.size() == 2);

    auto lines = flats_of_rank(f, 2);
    auto w2 = skew_sunflower(f, lines, 2);
    REQUIRE(w2.has_value());
    // two lines of a projective plane always meet in a point
    CHECK(w2->core.count() == 1);
    Matroid contracted = f.contract(w2->core);
    CHECK(is_skew(contracted,
                  {w2->flats[0] - w2->core, w2->flats[1] - w2->core}));

    auto w3 = skew_sunflower(f, lines, 1);
    REQUIRE(w3.has_value());
    CHECK(w3->core == lines.front());
  }

  TEST_CASE("stack search") {
    Matroid u24 = Matroid::uniform(2, 4);
    auto w = find_stack(u24, 2, 2, 1);
    REQUIRE(w.has_value());
    CHECK(w->layers.size() == 1);
    CHECK(w->layers[0] == u24.ground());

    CHECK_FALSE(find_stack(pg(3, 2), 2, 2, 1).has_value());

    Matroid two = direct_sum(Matroid::uniform(2, 4), Matroid::uniform(2, 4));
    auto w2 = find_stack(two, 2, 2, 2);
    REQUIRE(w2.has_value());
    CHECK(w2->layers.size() == 2);
    validate_stack(two, *w2);

    Budget tiny;
    tiny.nodes = 1;
    CHECK_THROWS_AS(find_stack(two, 2, 2, 2, tiny), BudgetError);
    CHECK_THROWS_AS(find_stack(Matroid::uniform(2, 4), 2, 2, 2),
                    std::invalid_argument);  // rank below 2k
  }

  TEST_CASE("weakly round dense restriction") {
    Matroid f = pg(3, 2);
    Matroid wf = weakly_round_dense_restriction(f);
    CHECK(wf.ground() == f.ground());

    Matroid two = direct_sum(Matroid::uniform(2, 3), Matroid::uniform(2, 3));
    Matroid w = weakly_round_dense_restriction(two);
    CHECK(is_weakly_round(w));
    CHECK(two.closure(w.ground()) == w.ground());
    CHECK(phi_density_ok(two, w.ground()));
    // lands on one of the two components
    bool comp = w.ground() == Bits::of({0, 1, 2}) ||
                w.ground() == Bits::of({3, 4, 5});
    CHECK(comp);

    Matroid r1 = Matroid::uniform(1, 2);
    CHECK(weakly_round_dense_restriction(r1).ground() == r1.ground());
  }

  TEST_CASE("cospanning minors") {
    Matroid f = pg(3, 2);
    Bits x = Bits::single(0);
    // a line avoiding element 0
    Bits y;
    for (const Bits& l : flats_of_rank(f, 2))
      if (!l.test(0)) {
        y = l;
        break;
      }
    REQUIRE(y.any());
    Matroid n = cospan_minor(f, x, y);
    CHECK(n.rank() == 2);
    CHECK(n.rank(y) == 2);
    CHECK(n.rank(x) == f.rank(x));

    // Y already spanning: the matroid itself
    Bits span = flats_of_rank(f, 2).front().with(
        (f.ground() - flats_of_rank(f, 2).front()).lowest());
    Matroid same = cospan_minor(f, x, f.closure(span));
    CHECK(same.ground() == f.ground());

    CHECK_THROWS_AS(cospan_minor(f, y, x), std::invalid_argument);
    Matroid two = direct_sum(Matroid::uniform(2, 3), Matroid::uniform(2, 3));
    CHECK_THROWS_AS(cospan_minor(two, Bits::single(0), Bits::of({3, 4})),
                    std::invalid_argument);  // not weakly round
  }

  TEST_CASE("projective maps") {
    Matroid f = pg(3, 2);
    std::vector<int> id(f.slots());
    for (int i = 0; i < f.slots(); ++i) id[i] = i;
    CHECK(is_projective_map(id, f, f));

    auto cert = line_cert(3);
    auto phi = quotient_map(cert);
    Matroid s = simplify(cert.projected).first;
    // restrict the map to the geometry, landing in the projection
    CHECK(is_projective_map(phi, cert.geometry, cert.projected));

    // collapsing a triangle onto independent points violates closure
    Matroid u23 = Matroid::uniform(2, 3);
    Matroid u33 = Matroid::uniform(3, 3);
    std::vector<int> straight = {0, 1, 2};
    CHECK_FALSE(is_projective_map(straight, u23, u33));
  }

  TEST_CASE("triangle compatibility") {
    auto tc = trunc_cert(4, 2);
    auto phi = quotient_map(tc);
    Matroid s = simplify(tc.projected).first;
    CHECK(triangle_compatible(phi, tc.geometry, s, 2));

    // identity on the Fano plane
    Matroid f = pg(3, 2);
    std::vector<int> id(f.slots());
    for (int i = 0; i < f.slots(); ++i) id[i] = i;
    CHECK(triangle_compatible(id, f, f, 2));

    // collapse exactly two points of a triangle: its image has two elements
    Bits line = flats_of_rank(f, 2).front();
    auto le = line.elems();
    std::vector<int> bad(f.slots());
    for (int i = 0; i < f.slots(); ++i) bad[i] = i;
    bad[le[1]] = le[0];  // two of the three line points collide
    Matroid target = f.remove(Bits::single(le[1]));
    CHECK_FALSE(triangle_compatible(bad, f, target, 2));

    // precondition: M must be simple
    auto lc = line_cert(3);
    CHECK_THROWS_AS(
        triangle_compatible(quotient_map(lc), lc.geometry, lc.projected, 2),
        std::invalid_argument);
  }

  TEST_CASE("quotient recognition") {
    Matroid f = pg(3, 2);
    CHECK(is_quotient(f.truncate(), f));
    CHECK(is_quotient(f, f));
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
      int n = 3 + static_cast<int>(rng.below(4));
      int r = 2 + static_cast<int>(rng.below(2));
      Matroid m = Matroid::uniform(std::min(r, n), n);
      CHECK(is_quotient(m.truncate(), m));
    }
    Matroid u24 = Matroid::uniform(2, 4);
    Matroid u34 = Matroid::uniform(3, 4);
    CHECK_FALSE(is_quotient(u34, u24));
    CHECK(is_quotient(u24, u34));
    CHECK_THROWS_AS(is_quotient(u24, Matroid::uniform(2, 5)),
                    std::invalid_argument);
  }

  TEST_CASE("strip to projection") {
    Matroid t = simplify(pg(4, 2).truncate()).first;
    auto r = strip_to_projection(t, Bits(), 2, 1);
    REQUIRE(r.has_value());
    CHECK(r->k == 1);
    CHECK(r->removed.empty());
    validate_certificate(r->witness);

    Matroid f = pg(3, 2);
    auto r2 = strip_to_projection(f, Bits(), 2, 1);
    REQUIRE(r2.has_value());
    CHECK(r2->k == 0);
    CHECK(r2->removed.empty());

    CHECK_FALSE(strip_to_projection(Matroid::uniform(2, 4), Bits(), 2, 2)
                    .has_value());

    Budget tiny;
    tiny.nodes = 0;
    // a budget of zero cannot even open the witness search
    CHECK_THROWS_AS(strip_to_projection(t, Bits(), 2, 1, tiny), BudgetError);
  }

  TEST_CASE("density identity across seeded certificates") {
    for (int q : {2, 3}) {
      for (int k = 1; k <= 2; ++k) {
        for (uint64_t i = 0; i < 12; ++i) {
          int r = 2 + static_cast<int>(i % 3);
          if (q == 3 && r + k > 5) continue;
          auto cert = seeded_projection(q, k, r, 555 + i * 7 + q + k);
          auto dr = density_params(cert);
          CHECK(dr.eps + dr.d_raw == pg_size(q, r + k));
          CHECK(dr.d >= 0);
          CHECK(dr.in_bound);
          CHECK(dr.floor_ok);
        }
      }
    }
  }
}
