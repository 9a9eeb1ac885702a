#include <doctest.h>

#include <set>
#include <sstream>

#include "matgrow/gf.hpp"
#include "matgrow/util.hpp"

using namespace matgrow;

namespace {

// Independent rank oracle: size of a maximal independent column subset,
// found by exhaustive subset search.
int brute_rank(const Field& f, const GFMatrix& m) {
  int best = 0;
  for (unsigned sub = 0; sub < (1u << m.cols); ++sub) {
    int cnt = __builtin_popcount(sub);
    if (cnt <= best || cnt > m.rows) continue;
    // square-free independence test: does some row combination vanish?
    // check via elimination restricted to the chosen columns
    GFMatrix s(m.rows, cnt);
    int c2 = 0;
    for (int c = 0; c < m.cols; ++c)
      if (sub >> c & 1) {
        for (int r = 0; r < m.rows; ++r) s.at(r, c2) = m.at(r, c);
        ++c2;
      }
    VecSpan sp;
    sp.init(f, m.rows);
    bool indep = true;
    for (int c = 0; c < cnt && indep; ++c) {
      uint8_t col[8] = {};
      for (int r = 0; r < m.rows; ++r) col[r] = s.at(r, c);
      indep = sp.insert(col);
    }
    if (indep) best = cnt;
  }
  return best;
}

}  // namespace

TEST_SUITE("gf") {
  TEST_CASE("field axioms hold exhaustively for every supported order") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
      const Field& f = Field::get(q);
      CAPTURE(q);
      CHECK(ipow(f.characteristic(), f.degree()) == q);
      for (int a = 0; a < q; ++a) {
        CHECK(f.add(static_cast<uint8_t>(a), 0) == a);
        CHECK(f.mul(static_cast<uint8_t>(a), 1) == a);
        CHECK(f.add(static_cast<uint8_t>(a), f.neg(static_cast<uint8_t>(a))) == 0);
        if (a != 0)
          CHECK(f.mul(static_cast<uint8_t>(a), f.inv(static_cast<uint8_t>(a))) == 1);
        for (int b = 0; b < q; ++b) {
          CHECK(f.add(a, b) == f.add(b, a));
          CHECK(f.mul(a, b) == f.mul(b, a));
          for (int c = 0; c < q; ++c) {
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          }
        }
      }
    }
  }

  TEST_CASE("characteristic-2 sum and the GF(4) modulus") {
    const Field& f2 = Field::get(2);
    CHECK(f2.add(1, 1) == 0);
    const Field& f4 = Field::get(4);
    // x * x = x + 1 under x^2 + x + 1
    CHECK(f4.mul(2, 2) == 3);
  }

  TEST_CASE("unsupported order is rejected by name") {
    CHECK_THROWS_WITH_AS(Field::get(6), doctest::Contains("6"),
                         std::invalid_argument);
    CHECK_THROWS_AS(Field::get(12), std::invalid_argument);
  }

  TEST_CASE("subfield lattice") {
    CHECK(Field::get(2).subfield_of(Field::get(4)));
    CHECK(Field::get(2).subfield_of(Field::get(16)));
    CHECK(Field::get(4).subfield_of(Field::get(16)));
    CHECK_FALSE(Field::get(4).subfield_of(Field::get(8)));
    CHECK_FALSE(Field::get(2).subfield_of(Field::get(9)));
    CHECK(Field::get(3).subfield_of(Field::get(9)));
  }

  TEST_CASE("mat_rank basics") {
    const Field& f2 = Field::get(2);
    GFMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(mat_rank(f2, id) == 3);
    GFMatrix z(3, 4);
    CHECK(mat_rank(f2, z) == 0);
    // all nonzero GF(2)^3 vectors
    GFMatrix all(3, 7);
    int c = 0;
    for (int v = 1; v < 8; ++v, ++c)
      for (int r = 0; r < 3; ++r) all.at(r, c) = (v >> r) & 1;
    CHECK(mat_rank(f2, all) == 3);
  }

  TEST_CASE("mat_rank agrees with brute-force subset rank on random matrices") {
    Rng rng(20240811);
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
      const Field& f = Field::get(q);
      for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(6));
        int cols = 1 + static_cast<int>(rng.below(10));
        GFMatrix m(rows, cols);
        for (auto& e : m.a) e = static_cast<uint8_t>(rng.below(q));
        CAPTURE(q);
        CHECK(mat_rank(f, m) == brute_rank(f, m));
      }
    }
  }

  TEST_CASE("projective point counts are exact for q <= 4 and rank <= 6") {
    for (int q : {2, 3, 4}) {
      const Field& f = Field::get(q);
      for (int n = 1; n <= 6; ++n) {
        auto pts = projective_points(f, n);
        CHECK(static_cast<long long>(pts.size()) == pg_size(q, n));
        // normalized and pairwise distinct
        std::set<std::vector<uint8_t>> seen(pts.begin(), pts.end());
        CHECK(seen.size() == pts.size());
        for (auto& v : pts) {
          int first = -1;
          for (size_t i = 0; i < v.size() && first < 0; ++i)
            if (v[i]) first = static_cast<int>(i);
          REQUIRE(first >= 0);
          CHECK(v[first] == 1);
        }
      }
    }
    CHECK(projective_points(Field::get(2), 1).size() == 1);
    CHECK(projective_points(Field::get(3), 2).size() == 4);
    CHECK(projective_points(Field::get(2), 3).size() == 7);
  }

  TEST_CASE("projective point counts for every supported order up to rank 6") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
      const Field& f = Field::get(q);
      for (int n = 1; n <= 6; ++n) {
        CHECK(static_cast<long long>(projective_points(f, n).size()) ==
              pg_size(q, n));
      }
    }
  }

  TEST_CASE("matrix text round trip") {
    const Field& f3 = Field::get(3);
    GFMatrix m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 2) = 2;
    m.at(1, 1) = 1;
    std::string text = format_matrix(3, m);
    std::istringstream in(text);
    int q = 0;
    GFMatrix back = parse_matrix(in, q);
    CHECK(q == 3);
    CHECK(back.rows == 2);
    CHECK(back.cols == 3);
    CHECK(back.a == m.a);
    CHECK(mat_rank(f3, back) == 2);
  }
}
