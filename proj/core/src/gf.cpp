#include "matgrow/gf.hpp"

#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace matgrow {

namespace {

struct FieldDef {
  int p, e;
  // Irreducible modulus coefficients, constant term first; empty for primes.
  std::vector<int> poly;
};

const std::map<int, FieldDef>& field_defs() {
  static const std::map<int, FieldDef> defs = {
      {2, {2, 1, {}}},          {3, {3, 1, {}}},
      {4, {2, 2, {1, 1, 1}}},   {5, {5, 1, {}}},
      {7, {7, 1, {}}},          {8, {2, 3, {1, 1, 0, 1}}},
      {9, {3, 2, {1, 0, 1}}},   {11, {11, 1, {}}},
      {13, {13, 1, {}}},        {16, {2, 4, {1, 1, 0, 0, 1}}},
  };
  return defs;
}

// Index <-> coefficient digits in base p.
std::vector<int> digits(int x, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
  return x;
}

// Polynomial product reduced by the monic modulus.
int poly_mul(int a, int b, int p, int e, const std::vector<int>& poly) {
  std::vector<int> da = digits(a, p, e), db = digits(b, p, e);
  std::vector<int> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int d = 2 * e - 2; d >= e; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    // x^e = -(poly[0] + ... + poly[e-1] x^{e-1})
    for (int i = 0; i < e; ++i)
      prod[d - e + i] = ((prod[d - e + i] - c * poly[i]) % p + p * p) % p;
  }
  prod.resize(e);
  return undigits(prod, p);
}

}  // namespace

bool Field::supported(int q) { return field_defs().count(q) > 0; }

Field::Field(int q) : q_(q) {
  const FieldDef& def = field_defs().at(q);
  p_ = def.p;
  e_ = def.e;
  add_.resize(static_cast<size_t>(q) * q);
  mul_.resize(static_cast<size_t>(q) * q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (e_ == 1) {
        add_[a * q + b] = static_cast<uint8_t>((a + b) % p_);
        mul_[a * q + b] = static_cast<uint8_t>((a * b) % p_);
      } else {
        std::vector<int> da = digits(a, p_, e_), db = digits(b, p_, e_);
        std::vector<int> s(e_);
        for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
        add_[a * q + b] = static_cast<uint8_t>(undigits(s, p_));
        mul_[a * q + b] = static_cast<uint8_t>(poly_mul(a, b, p_, e_, def.poly));
      }
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (add_[a * q + b] == 0) neg_[a] = static_cast<uint8_t>(b);
      if (a != 0 && mul_[a * q + b] == 1) inv_[a] = static_cast<uint8_t>(b);
    }
  }
}

const Field& Field::get(int q) {
  if (!supported(q))
    throw std::invalid_argument("GF(" + std::to_string(q) +
                                "): not a supported prime power order");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::unique_ptr<Field>(new Field(q))).first;
  return *it->second;
}

bool VecSpan::insert(const uint8_t* v) {
  std::array<uint8_t, 8> w{};
  for (int i = 0; i < dim; ++i) w[i] = v[i];
  for (int r = 0; r < nrows; ++r) {
    uint8_t c = w[pivot[r]];
    if (c == 0) continue;
    // w -= c * rows[r]
    for (int i = 0; i < dim; ++i)
      w[i] = f->sub(w[i], f->mul(c, rows[r][i]));
  }
  int pv = -1;
  for (int i = 0; i < dim; ++i)
    if (w[i] != 0) {
      pv = i;
      break;
    }
  if (pv < 0) return false;
  uint8_t ic = f->inv(w[pv]);
  for (int i = 0; i < dim; ++i) w[i] = f->mul(ic, w[i]);
  rows[nrows] = w;
  pivot[nrows] = pv;
  ++nrows;
  return true;
}

bool VecSpan::contains(const uint8_t* v) const {
  std::array<uint8_t, 8> w{};
  for (int i = 0; i < dim; ++i) w[i] = v[i];
  for (int r = 0; r < nrows; ++r) {
    uint8_t c = w[pivot[r]];
    if (c == 0) continue;
    for (int i = 0; i < dim; ++i)
      w[i] = f->sub(w[i], f->mul(c, rows[r][i]));
  }
  for (int i = 0; i < dim; ++i)
    if (w[i] != 0) return false;
  return true;
}

int mat_rank(const Field& f, const GFMatrix& m) {
  if (m.rows > 8) {
    // Column rank equals row rank; the span kernel is capped at dimension 8,
    // plenty for every geometry handled here.
    throw std::invalid_argument("mat_rank: more than 8 rows unsupported");
  }
  VecSpan sp;
  sp.init(f, m.rows);
  std::array<uint8_t, 8> col{};
  for (int c = 0; c < m.cols && sp.rank() < m.rows; ++c) {
    for (int r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
    sp.insert(col.data());
  }
  return sp.rank();
}

std::vector<std::vector<uint8_t>> projective_points(const Field& f, int n) {
  if (n < 1) throw std::invalid_argument("projective_points: n must be >= 1");
  std::vector<std::vector<uint8_t>> pts;
  const int q = f.order();
  for (int pv = 0; pv < n; ++pv) {
    // first nonzero coordinate at position pv, normalized to 1
    int free = n - pv - 1;
    long long total = 1;
    for (int i = 0; i < free; ++i) total *= q;
    for (long long t = 0; t < total; ++t) {
      std::vector<uint8_t> v(n, 0);
      v[pv] = 1;
      long long x = t;
      for (int i = pv + 1; i < n; ++i) {
        v[i] = static_cast<uint8_t>(x % q);
        x /= q;
      }
      pts.push_back(std::move(v));
    }
  }
  return pts;
}

std::string format_matrix(int q, const GFMatrix& m) {
  std::ostringstream os;
  os << "q " << q << " rows " << m.rows << " cols " << m.cols << "\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) os << ' ';
      os << static_cast<int>(m.at(r, c));
    }
    os << "\n";
  }
  return os.str();
}

GFMatrix parse_matrix(std::istream& in, int& q_out) {
  std::string kw;
  int q, r, c;
  in >> kw >> q;
  if (kw != "q") throw std::invalid_argument("matrix: expected 'q <order>'");
  in >> kw >> r;
  if (kw != "rows") throw std::invalid_argument("matrix: expected 'rows <r>'");
  in >> kw >> c;
  if (kw != "cols") throw std::invalid_argument("matrix: expected 'cols <c>'");
  const Field& f = Field::get(q);
  GFMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      int x;
      if (!(in >> x)) throw std::invalid_argument("matrix: truncated entries");
      if (x < 0 || x >= f.order())
        throw std::invalid_argument("matrix: entry out of range for field");
      m.at(i, j) = static_cast<uint8_t>(x);
    }
  q_out = q;
  return m;
}

}  // namespace matgrow
