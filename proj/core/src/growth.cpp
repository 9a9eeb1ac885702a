#include "matgrow/growth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "matgrow/projection.hpp"

namespace matgrow {

namespace {

long long dq_cap(int q, int k) {
  // largest admissible raw offset q*d
  return q * ((ipow(q, 2 * k) - 1) / (static_cast<long long>(q) * q - 1));
}

void check_in_dq(int q, int k, long long d_raw) {
  if (k < 0 || d_raw < 0 || d_raw > dq_cap(q, k))
    throw std::invalid_argument("profile cell outside the parameter region");
}

}  // namespace

long long grf_formula(int q, int k, long long d, int n) {
  check_in_dq(q, k, q * d);
  return pg_size(q, n + k) - q * d;
}

int dq_compare(int q, std::pair<int, long long> a,
               std::pair<int, long long> b) {
  check_in_dq(q, a.first, a.second);
  check_in_dq(q, b.first, b.second);
  if (a.first != b.first) return a.first < b.first ? -1 : 1;
  if (a.second != b.second) return a.second > b.second ? -1 : 1;
  return 0;
}

namespace {

// extension is simple iff the new element is neither a loop nor parallel
bool extension_simple(const Matroid& m, int slot) {
  if (m.is_loop(slot)) return false;
  return m.closure(Bits::single(slot)).count() == 1;
}

HResult h_fields_mode(const ClassSpec& spec, int n, const Budget& budget) {
  int q0 = *std::min_element(spec.fields.begin(), spec.fields.end());
  Matroid g = pg(n, q0);
  HResult res;
  // the full geometry first: it attains the maximum whenever it is a member
  if (class_membership(spec, g)) {
    res.value = g.size();
    res.witnesses.push_back(g);
    res.exact = true;
    return res;
  }
  int np = g.size();
  if (np > 30) {
    res.exact = false;
    return res;
  }
  uint64_t nodes = 0;
  res.exact = true;
  for (uint64_t sub = 0; sub < (uint64_t{1} << np); ++sub) {
    int cnt = std::popcount(sub);
    if (cnt <= res.value) continue;
    if (++nodes > budget.nodes) {
      res.exact = false;
      break;
    }
    Bits x;
    for (int i = 0; i < np; ++i)
      if (sub >> i & 1) x.set(i);
    Matroid cand = g.restrict_to(x);
    bool member;
    try {
      member = class_membership(spec, cand);
    } catch (const BudgetError&) {
      res.exact = false;
      continue;
    }
    if (member) {
      res.value = cnt;
      res.witnesses = {cand};
    }
  }
  return res;
}

HResult h_enumeration_mode(const ClassSpec& spec, int n,
                           const Budget& budget) {
  HResult res;
  res.exact = true;
  uint64_t nodes = 0;
  std::vector<Matroid> level = {Matroid::uniform(0, 0)};
  if (!class_membership(spec, level[0])) {
    // the empty matroid is excluded; the class is empty
    res.value = 0;
    return res;
  }
  res.value = 0;
  res.witnesses = {level[0]};
  while (!level.empty()) {
    std::vector<Matroid> next;
    for (const Matroid& m : level) {
      ExtensionList exts;
      try {
        exts = enumerate_extensions(m, false, budget.nodes);
      } catch (const std::invalid_argument&) {
        res.exact = false;
        continue;
      }
      if (exts.truncated) res.exact = false;
      for (const Matroid& ext : exts.items) {
        if (++nodes > budget.nodes) {
          res.exact = false;
          return res;
        }
        int slot = ext.slots() - 1;
        if (!extension_simple(ext, slot)) continue;
        if (ext.rank() > n) continue;
        bool member;
        try {
          member = class_membership(spec, ext);
        } catch (const BudgetError&) {
          res.exact = false;
          continue;
        }
        if (!member) continue;
        bool dup = false;
        for (const Matroid& seen : next)
          if (seen.size() == ext.size() && is_isomorphic(seen, ext)) {
            dup = true;
            break;
          }
        if (dup) continue;
        next.push_back(ext);
        if (ext.size() > res.value) {
          res.value = ext.size();
          res.witnesses = {ext};
        } else if (ext.size() == res.value) {
          res.witnesses.push_back(ext);
        }
      }
    }
    level = std::move(next);
  }
  return res;
}

}  // namespace

HResult h_exhaustive(const ClassSpec& spec, int n, const Budget& budget) {
  if (n < 0) throw std::invalid_argument("h_exhaustive: negative rank");
  if (!spec.fields.empty()) return h_fields_mode(spec, n, budget);
  if (spec.excluded.empty())
    throw std::invalid_argument("h_exhaustive: class must be constrained");
  return h_enumeration_mode(spec, n, budget);
}

SearchReport kd_search(const ClassSpec& spec, int m, int k_max,
                       const Budget& budget) {
  if (m < 2) throw std::invalid_argument("kd_search: rank must be >= 2");
  ClassParams params = class_params(spec);
  int q = params.q;

  SearchReport rep;
  rep.profile.q = q;

  for (int k = k_max; k >= 0; --k) {
    // candidates: k-fold extensions of pg(m+k, q), isomorphism-reduced per
    // level, contracted to rank-m projections
    long long best_qd = -1;
    std::vector<ProjectionCertificate> best_certs;

    std::function<void(const Matroid&, std::vector<Matroid>&)> descend =
        [&](const Matroid& lifted, std::vector<Matroid>& chain) {
          if (static_cast<int>(chain.size()) == k) {
            ProjectionCertificate cert;
            cert.q = q;
            cert.k = k;
            cert.lifted = lifted;
            for (int s = pg_size(q, m + k); s < lifted.slots(); ++s)
              cert.K.set(s);
            cert.geometry = lifted.remove(cert.K);
            cert.projected = lifted.contract(cert.K);
            try {
              validate_certificate(cert);
            } catch (const std::invalid_argument&) {
              return;
            }
            if (cert.projected.rank() != m) return;
            DensityReport dr = density_params(cert);
            if (!dr.in_bound) return;
            Matroid s = simplify(cert.projected).first;
            ++rep.queries;
            bool member;
            try {
              member = class_membership(spec, s);
            } catch (const BudgetError&) {
              rep.truncated = true;
              return;
            }
            if (!member) return;
            if (best_qd < 0 || dr.d_raw < best_qd) {
              best_qd = dr.d_raw;
              best_certs = {cert};
            } else if (dr.d_raw == best_qd && best_certs.size() < 4) {
              best_certs.push_back(cert);
            }
            return;
          }
          ExtensionList exts;
          try {
            exts = enumerate_extensions(lifted, true, budget.nodes);
          } catch (const std::invalid_argument&) {
            rep.truncated = true;
            return;
          }
          if (exts.truncated) rep.truncated = true;
          for (const Matroid& ext : exts.items) {
            int slot = ext.slots() - 1;
            if (ext.is_loop(slot)) continue;       // dependent K
            if (ext.rank() > lifted.rank()) continue;  // coloop: wrong geometry
            chain.push_back(ext);
            descend(ext, chain);
            chain.pop_back();
          }
        };

    Matroid g = pg(m + k, q);
    std::vector<Matroid> chain;
    descend(g, chain);

    if (best_qd >= 0) {
      rep.found = true;
      rep.profile.k = k;
      rep.profile.d = best_qd / q;
      rep.witnesses = best_certs;
      return rep;
    }
  }
  return rep;
}

}  // namespace matgrow
