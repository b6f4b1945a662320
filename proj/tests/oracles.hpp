#pragma once
// Brute-force reference implementations used only by tests.

#include <map>
#include <random>
#include <set>

#include "stabg/decomp.hpp"
#include "stabg/linalg.hpp"
#include "stabg/module.hpp"

namespace oracle {

using namespace stabg;

inline std::vector<Vec> all_vectors(Scalar p, std::size_t n) {
  std::vector<Vec> out;
  CoefficientCounter c(p, n);
  do out.push_back(c.value());
  while (c.next());
  return out;
}

inline bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

inline bool nilpotent(const FiniteAlgebra& a, const Vec& x) {
  Vec cur = x;
  for (std::size_t i = 0; i < a.dim(); ++i) cur = a.multiply(cur, x);
  return is_zero(cur);
}

/// {a : x·a nilpotent for every x}, returned as an echelon basis of its span.
inline std::vector<Vec> radical(const FiniteAlgebra& a) {
  auto elems = all_vectors(a.p(), a.dim());
  std::vector<Vec> members;
  for (const auto& cand : elems) {
    bool ok = true;
    for (const auto& x : elems)
      if (!nilpotent(a, a.multiply(x, cand))) {
        ok = false;
        break;
      }
    if (ok) members.push_back(cand);
  }
  auto basis = echelon_basis(a.p(), members, a.dim());
  // every span element must itself be a member
  std::size_t expected = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) expected *= a.p();
  if (members.size() != expected) return {};
  return basis;
}

inline FpMatrix random_matrix(Scalar p, std::size_t r, std::size_t c, std::mt19937& rng) {
  FpMatrix m(p, r, c);
  std::uniform_int_distribution<Scalar> d(0, p - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

inline FpMatrix random_invertible(Scalar p, std::size_t n, std::mt19937& rng) {
  for (;;) {
    FpMatrix m = random_matrix(p, n, n, rng);
    if (rank(m) == n) return m;
  }
}

inline Module random_conjugate(const Module& m, std::mt19937& rng) {
  if (m.dim() == 0) return m;
  return transport(m, random_invertible(m.p(), m.dim(), rng)).first;
}

/// Hermite reduction by repeated gcd row operations; upper triangular, positive diagonal on pivot columns.
inline std::vector<std::vector<long long>> hermite(std::vector<std::vector<long long>> rows, std::size_t n) {
  std::vector<std::vector<long long>> out;
  for (std::size_t col = 0; col < n; ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      bool done = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        long long q = rows[i][col] / rows[best][col];
        for (std::size_t c = 0; c < n; ++c) rows[i][c] -= q * rows[best][c];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        auto r = rows[best];
        rows.erase(rows.begin() + long(best));
        if (r[col] < 0)
          for (auto& x : r) x = -x;
        out.push_back(r);
        break;
      }
    }
    if (out.size() < col + 1) out.push_back(std::vector<long long>(n, 0));  // free column
  }
  return out;
}

/// Invariant factors of a finite group Z^n / rows by listing coset representatives and element orders.
/// Returns nullopt when the quotient is infinite or larger than `limit`.
inline std::optional<std::vector<long long>> quotient_group(const std::vector<std::vector<long long>>& rels,
                                                            std::size_t n, std::size_t limit = 4096) {
  auto h = hermite(rels, n);
  std::size_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (h[i][i] == 0) return std::nullopt;
    order *= std::size_t(h[i][i]);
    if (order > limit) return std::nullopt;
  }
  auto reduce = [&](std::vector<long long> x) {
    for (std::size_t i = 0; i < n; ++i) {
      long long q = x[i] / h[i][i];
      if (x[i] - q * h[i][i] < 0) --q;
      for (std::size_t c = 0; c < n; ++c) x[c] -= q * h[i][c];
    }
    return x;
  };
  std::vector<std::vector<long long>> reps{std::vector<long long>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<long long>> next;
    for (const auto& r : reps)
      for (long long t = 0; t < h[i][i]; ++t) {
        auto x = r;
        x[i] = t;
        next.push_back(x);
      }
    reps = next;
  }
  auto is_zero_ll = [](const std::vector<long long>& v) {
    for (auto x : v)
      if (x) return false;
    return true;
  };
  // From #{g : q^k g = 0} for each prime q, read off the q-primary cyclic factors.
  std::vector<long long> factors;
  long long remaining = (long long)order;
  std::map<long long, std::vector<long long>> parts;
  for (long long q = 2; q <= remaining; ++q) {
    if (remaining % q) continue;
    int e = 0;
    while (remaining % q == 0) {
      remaining /= q;
      ++e;
    }
    std::vector<std::size_t> cnt(e + 1, 0);
    long long qk = 1;
    for (int k = 0; k <= e; ++k) {
      std::size_t c = 0;
      for (const auto& r : reps) {
        auto x = r;
        for (auto& v : x) v *= qk;
        if (is_zero_ll(reduce(x))) ++c;
      }
      cnt[k] = c;
      qk *= q;
    }
    std::vector<long long> ge(e + 2, 0);
    for (int k = 1; k <= e; ++k) {
      std::size_t ratio = cnt[k] / cnt[k - 1];
      long long lg = 0;
      while (ratio > 1) {
        ratio /= std::size_t(q);
        ++lg;
      }
      ge[k] = lg;
    }
    long long qe = 1;
    for (int k = 1; k <= e; ++k) {
      qe *= q;
      for (long long m = 0; m < ge[k] - ge[k + 1]; ++m) parts[q].push_back(qe);
    }
  }
  std::size_t rk = 0;
  for (auto& [q, v] : parts) {
    std::sort(v.rbegin(), v.rend());
    rk = std::max(rk, v.size());
  }
  factors.assign(rk, 1);
  for (auto& [q, v] : parts)
    for (std::size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
  std::sort(factors.begin(), factors.end());
  return factors;
}

/// Every idempotent endomorphism, by enumerating End(M).
inline std::vector<FpMatrix> idempotents(const Module& m) {
  auto homs = hom_space(m, m);
  std::vector<FpMatrix> out;
  for (const auto& c : all_vectors(m.p(), homs.size())) {
    FpMatrix e = combine(homs, c, m, m).matrix();
    if (e * e == e) out.push_back(e);
  }
  return out;
}

/// Short exact sequences 0 -> S -> M -> M/S -> 0 from every submodule of M.
inline std::vector<std::pair<Module, Module>> sub_quotient_pairs(const Module& m) {
  std::vector<std::pair<Module, Module>> out;
  for (const auto& s : submodules(m)) out.push_back({submodule(m, s).module, quotient(m, s).module});
  return out;
}

}  // namespace oracle

namespace oracle {

/// k[x]/x^i as a module over trunc_poly(p, n): x shifts the standard basis.
inline Module jordan(const AlgebraPtr& alg, std::size_t i) {
  FpMatrix shift(alg->p(), i, i);
  for (std::size_t r = 0; r + 1 < i; ++r) shift.set(r + 1, r, 1);
  std::vector<FpMatrix> action;
  FpMatrix cur = FpMatrix::identity(alg->p(), i);
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    action.push_back(cur);
    cur = cur * shift;
  }
  return Module::create(alg, action);
}

/// Every invariant subspace, by enumerating spanning tuples.
inline std::set<Subspace> brute_submodules(const Module& m) {
  std::set<Subspace> out;
  auto vecs = all_vectors(m.p(), m.dim());
  std::vector<std::size_t> idx(m.dim(), 0);
  for (;;) {
    std::vector<Vec> span;
    for (auto i : idx) span.push_back(vecs[i]);
    Subspace s(m.p(), m.dim(), span);
    if (is_invariant(m, s)) out.insert(s);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == vecs.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  if (m.dim() == 0) out.insert(Subspace(m.p(), 0));
  return out;
}

}  // namespace oracle
