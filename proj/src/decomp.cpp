#include "stabg/decomp.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "stabg/errors.hpp"

namespace stabg {

namespace {

Vec flatten(const FpMatrix& m) { return m.data(); }

FpMatrix unflatten(Scalar p, const Vec& v, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, v[r * n + c]);
  return m;
}

FpMatrix matrix_power(FpMatrix a, std::uint64_t e) {
  FpMatrix result = FpMatrix::identity(a.p(), a.rows());
  while (e) {
    if (e & 1) result = result * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return result;
}

// Berlekamp step: a nontrivial idempotent of the commutative subalgebra spanned by `basis` (elements of s,
// closed under product and containing 1), when one exists.
std::optional<Vec> berlekamp_idempotent(const FiniteAlgebra& s, const std::vector<Vec>& basis) {
  const Scalar p = s.p();
  const std::size_t r = basis.size();
  if (r < 2) return std::nullopt;
  Subspace span(p, s.dim(), basis);
  const auto& eb = span.basis();
  FpMatrix frob(p, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = span.coordinates(s.power(eb[i], p));
    if (!c) throw std::logic_error("subalgebra is not closed under powers");
    for (std::size_t k = 0; k < r; ++k) frob.set(k, i, (*c)[k]);
  }
  auto fixed = nullspace_basis(frob - FpMatrix::identity(p, r));
  if (fixed.size() < 2) return std::nullopt;
  Subspace scalars(p, s.dim(), {s.unit()});
  for (const auto& coords : fixed) {
    Vec b = linear_combination(p, eb, coords, s.dim());
    if (scalars.contains(b)) continue;
    for (Scalar lambda = 0; lambda < p; ++lambda) {
      Vec t = s.sub(b, s.scale(s.unit(), lambda));
      Vec e = s.sub(s.unit(), s.power(t, p - 1));
      bool zero = std::all_of(e.begin(), e.end(), [](Scalar x) { return x == 0; });
      if (!zero && e != s.unit()) return e;
    }
  }
  return std::nullopt;
}

std::vector<Vec> center_basis(const FiniteAlgebra& s) {
  const std::size_t n = s.dim();
  FpMatrix sys(s.p(), n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec d = s.sub(s.basis_product(i, j), s.basis_product(j, i));
      for (std::size_t k = 0; k < n; ++k) sys.set(j * n + k, i, d[k]);
    }
  return nullspace_basis(sys);
}

std::vector<Vec> powers_span(const FiniteAlgebra& s, const Vec& x) {
  Subspace span(s.p(), s.dim());
  Vec cur = s.unit();
  while (span.add(cur)) cur = s.multiply(cur, x);
  return span.basis();
}

// A nontrivial idempotent of a semisimple algebra, if one exists.
std::optional<Vec> semisimple_idempotent(const FiniteAlgebra& s) {
  auto z = center_basis(s);
  if (auto e = berlekamp_idempotent(s, z)) return e;
  if (s.is_commutative()) return std::nullopt;
  // Simple but not a field: some element generates a split commutative subalgebra.
  std::vector<Vec> candidates;
  for (std::size_t i = 0; i < s.dim(); ++i) candidates.push_back(s.basis_vector(i));
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) candidates.push_back(s.add(s.basis_vector(i), s.basis_vector(j)));
  for (const auto& c : candidates)
    if (auto e = berlekamp_idempotent(s, powers_span(s, c))) return e;
  double total = 1;
  for (std::size_t i = 0; i < s.dim(); ++i) total *= s.p();
  if (total <= double(1u << 16)) {
    CoefficientCounter counter(s.p(), s.dim());
    while (counter.next())
      if (auto e = berlekamp_idempotent(s, powers_span(s, counter.value()))) return e;
  }
  throw std::logic_error("no idempotent found in a noncommutative semisimple algebra");
}

// GL_n(F_p) with inverses, cached.
struct GLTable {
  std::vector<FpMatrix> mats, invs;
};

const GLTable* gl_table(Scalar p, std::size_t n) {
  static std::mutex mu;
  static std::map<std::pair<Scalar, std::size_t>, GLTable> cache;
  double order = 1, pn = 1;
  for (std::size_t i = 0; i < n; ++i) pn *= p;
  double pi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= (pn - pi);
    pi *= p;
  }
  if (order > 200000) return nullptr;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return &it->second;
  GLTable t;
  CoefficientCounter counter(p, n * n);
  do {
    FpMatrix m = unflatten(p, counter.value(), n);
    if (auto inv = inverse(m)) {
      t.mats.push_back(m);
      t.invs.push_back(*inv);
    }
  } while (counter.next());
  return &cache.emplace(key, std::move(t)).first->second;
}

std::vector<FpMatrix> generator_actions(const Module& m) {
  std::vector<FpMatrix> out;
  for (auto g : m.algebra()->generator_indices()) out.push_back(m.action(g));
  return out;
}

struct Part {
  Module module;
  FpMatrix inclusion;  // dim(M) × dim(part)
};

void split(const Module& m, const FpMatrix& inclusion, std::vector<Part>& out) {
  if (m.dim() == 0) return;
  auto e = find_idempotent(m);
  if (!e) {
    out.push_back({m, inclusion});
    return;
  }
  FpMatrix f = FpMatrix::identity(m.p(), m.dim()) - *e;
  for (const FpMatrix* proj : {&*e, &f}) {
    auto sub = submodule(m, Subspace(m.p(), m.dim(), image_basis(*proj)));
    split(sub.module, inclusion * sub.inclusion.matrix(), out);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

FpMatrix EndAlgebra::matrix_of(const Vec& coords) const {
  FpMatrix out(algebra->p(), basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i]) out = out + basis[i].scaled(coords[i]);
  return out;
}

EndAlgebra endomorphism_algebra(const Module& m) {
  if (m.dim() == 0) throw InputError("endomorphism algebra of the zero module");
  const Scalar p = m.p();
  const std::size_t n = m.dim();
  std::vector<Vec> flat;
  for (const auto& h : hom_space(m, m)) flat.push_back(flatten(h.matrix()));
  Subspace span(p, n * n, flat);
  EndAlgebra e;
  for (const auto& v : span.basis()) e.basis.push_back(unflatten(p, v, n));
  const std::size_t d = e.basis.size();
  std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mul[i][j] = *span.coordinates(flatten(e.basis[i] * e.basis[j]));
  Vec unit = *span.coordinates(flatten(FpMatrix::identity(p, n)));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("f" + std::to_string(i));
  e.algebra = FiniteAlgebra::from_trusted_constants(p, std::move(mul), std::move(unit), std::move(labels), "End");
  return e;
}

std::optional<FpMatrix> find_idempotent(const Module& m) {
  EndAlgebra e = endomorphism_algebra(m);
  auto rad = matrix_algebra_radical(m.p(), e.basis);
  if (rad.size() + 1 == e.basis.size()) return std::nullopt;
  auto q = quotient_by_ideal(Ideal{e.algebra, rad});
  auto ebar = semisimple_idempotent(*q.algebra);
  if (!ebar) return std::nullopt;
  FpMatrix a = e.matrix_of(q.projection.preimage(*ebar));
  for (int step = 0; step < 64 && a * a != a; ++step) a = matrix_power(a, m.p());
  if (a * a != a) throw std::logic_error("idempotent lifting did not converge");
  return a;
}

bool is_indecomposable(const Module& m) {
  if (m.dim() == 0) throw InputError("the zero module is not indecomposable");
  return !find_idempotent(m).has_value();
}

std::optional<ModuleHom> indecomposable_iso(const Module& m, const Module& n) {
  if (m.dim() != n.dim() || !same_algebra(m.algebra(), n.algebra())) return std::nullopt;
  if (m == n) return ModuleHom::identity(m);
  auto fs = hom_space(m, n);
  if (fs.empty()) return std::nullopt;
  auto gs = hom_space(n, m);
  for (const auto& f : fs) {
    if (f.is_iso()) return f;
    for (const auto& g : gs)
      if (rank(g.matrix() * f.matrix()) == m.dim()) return f;
  }
  return std::nullopt;
}

std::pair<Module, ModuleHom> canonical_form(const Module& m) {
  const GLTable* gl = m.dim() == 0 ? nullptr : gl_table(m.p(), m.dim());
  if (!gl) return {m, ModuleHom::identity(m)};
  auto acts = generator_actions(m);
  std::size_t best = 0;
  std::vector<FpMatrix> best_key;
  for (std::size_t t = 0; t < gl->mats.size(); ++t) {
    std::vector<FpMatrix> key;
    for (const auto& a : acts) key.push_back(gl->mats[t] * a * gl->invs[t]);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = t;
    }
  }
  return transport(m, gl->mats[best]);
}

Subspace radical_subspace(const Module& m) {
  Ideal rad = jacobson_radical(m.algebra());
  Subspace s(m.p(), m.dim());
  for (const auto& j : rad.basis) {
    FpMatrix a = m.act(j);
    for (std::size_t c = 0; c < m.dim(); ++c) s.add(a.column(c));
  }
  return s;
}

Subspace socle_subspace(const Module& m) {
  Ideal rad = jacobson_radical(m.algebra());
  std::vector<FpMatrix> blocks;
  for (const auto& j : rad.basis) blocks.push_back(m.act(j));
  if (blocks.empty() || m.dim() == 0) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < m.dim(); ++i) {
      Vec e(m.dim(), 0);
      e[i] = 1;
      all.push_back(e);
    }
    return Subspace(m.p(), m.dim(), all);
  }
  return Subspace(m.p(), m.dim(), nullspace_basis(FpMatrix::vstack(blocks)));
}

std::vector<std::size_t> module_invariants(const Module& m) {
  std::vector<std::size_t> out{m.dim()};
  if (m.dim() == 0) return out;
  // Radical series.
  Ideal rad = jacobson_radical(m.algebra());
  std::vector<FpMatrix> js;
  for (const auto& j : rad.basis) js.push_back(m.act(j));
  Subspace cur(m.p(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Vec e(m.dim(), 0);
    e[i] = 1;
    cur.add(e);
  }
  while (cur.dim() > 0) {
    Subspace next(m.p(), m.dim());
    for (const auto& a : js)
      for (const auto& v : cur.basis()) next.add(a.apply(v));
    out.push_back(next.dim());
    if (next.dim() == cur.dim()) break;
    cur = next;
  }
  out.push_back(socle_subspace(m).dim());
  out.push_back(hom_dim(m, m));
  return out;
}

namespace {

struct SortKey {
  std::vector<std::size_t> inv;
  std::vector<FpMatrix> acts;
  bool operator<(const SortKey& o) const {
    if (inv != o.inv) return inv < o.inv;
    return acts < o.acts;
  }
};

SortKey sort_key(const Module& m) { return {module_invariants(m), generator_actions(m)}; }

}  // namespace

bool canonical_less(const Module& a, const Module& b) { return sort_key(a) < sort_key(b); }

std::optional<std::size_t> find_isomorphic(const Module& m, const std::vector<Module>& list) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].dim() == m.dim() && indecomposable_iso(m, list[i])) return i;
  return std::nullopt;
}

Decomposition krull_schmidt(const Module& m) {
  Decomposition d;
  d.module = m;
  std::vector<Part> parts;
  split(m, FpMatrix::identity(m.p(), m.dim()), parts);
  std::vector<Module> reps;
  for (auto& part : parts) {
    auto [canon, iso] = canonical_form(part.module);
    FpMatrix incl = part.inclusion * *inverse(iso.matrix());
    bool matched = false;
    for (const auto& r : reps) {
      if (r == canon) {
        matched = true;
        break;
      }
      if (r.dim() == canon.dim() && !gl_table(m.p(), r.dim())) {
        if (auto psi = indecomposable_iso(canon, r)) {
          incl = incl * *inverse(psi->matrix());
          canon = r;
          matched = true;
          break;
        }
      }
    }
    if (!matched) reps.push_back(canon);
    part = Part{canon, incl};
  }
  std::vector<std::pair<SortKey, std::size_t>> order;
  for (std::size_t i = 0; i < parts.size(); ++i) order.push_back({sort_key(parts[i].module), i});
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FpMatrix> cols;
  for (const auto& [key, i] : order) {
    d.parts.push_back(parts[i].module);
    cols.push_back(parts[i].inclusion);
    if (!d.summands.empty() && d.summands.back().first == parts[i].module)
      ++d.summands.back().second;
    else
      d.summands.push_back({parts[i].module, 1});
  }
  DirectSum ds = direct_sum(m.algebra(), d.parts);
  FpMatrix from = cols.empty() ? FpMatrix(m.p(), m.dim(), 0) : FpMatrix::hstack(cols);
  d.from_sum = ModuleHom::trusted(ds.module, m, from);
  d.to_sum = ModuleHom::trusted(m, ds.module, m.dim() == 0 ? FpMatrix(m.p(), 0, 0) : *inverse(from));
  return d;
}

std::optional<ModuleHom> is_isomorphic(const Module& m, const Module& n) {
  if (m.dim() != n.dim() || !same_algebra(m.algebra(), n.algebra())) return std::nullopt;
  if (m.dim() == 0) return ModuleHom::trusted(m, n, FpMatrix(m.p(), 0, 0));
  if (module_invariants(m) != module_invariants(n)) return std::nullopt;
  Decomposition dm = krull_schmidt(m), dn = krull_schmidt(n);
  if (dm.parts.size() != dn.parts.size()) return std::nullopt;
  const std::size_t k = dm.parts.size();
  std::vector<bool> used(k, false);
  std::vector<std::size_t> offset_n(k + 1, 0), offset_m(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    offset_m[i + 1] = offset_m[i] + dm.parts[i].dim();
    offset_n[i + 1] = offset_n[i] + dn.parts[i].dim();
  }
  FpMatrix big(m.p(), n.dim(), m.dim());
  for (std::size_t i = 0; i < k; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < k && !found; ++j) {
      if (used[j]) continue;
      if (auto psi = indecomposable_iso(dm.parts[i], dn.parts[j])) {
        used[j] = true;
        found = true;
        big.paste(offset_n[j], offset_m[i], psi->matrix());
      }
    }
    if (!found) return std::nullopt;
  }
  return ModuleHom::trusted(m, n, dn.from_sum.matrix() * big * dm.to_sum.matrix());
}

// ---------------------------------------------------------------------------

std::vector<Module> simples(const AlgebraPtr& alg, bool require_split) {
  Ideal rad = jacobson_radical(alg);
  auto q = quotient_by_ideal(rad);
  Decomposition d = krull_schmidt(regular_module(q.algebra));
  std::vector<Module> out;
  for (const auto& [part, mult] : d.summands) {
    Module s = restrict_module(part, q.projection);
    if (find_isomorphic(s, out)) continue;
    if (require_split && hom_dim(s, s) != 1)
      throw UnsupportedSemisimpleType("simple module with endomorphism ring larger than the prime field");
    out.push_back(canonical_form(s).first);
  }
  std::stable_sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<FpMatrix> CocycleData::unpack(const Vec& v) const {
  std::vector<FpMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    FpMatrix d(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) d.set(r, c, v[k * rows * cols + r * cols + c]);
    out.push_back(std::move(d));
  }
  return out;
}

CocycleData cocycle_data(const Module& s, const Module& q) {
  const auto& alg = *s.algebra();
  CocycleData cd;
  cd.p = alg.p();
  cd.rows = s.dim();
  cd.cols = q.dim();
  cd.count = alg.dim();
  const std::size_t blk = cd.rows * cd.cols, unknowns = cd.count * blk;
  const Scalar p = cd.p;
  if (unknowns == 0) return cd;
  auto idx = [&](std::size_t k, std::size_t r, std::size_t c) { return k * blk + r * cd.cols + c; };
  std::vector<Vec> eqs;
  // D_{e_i e_j} - S_j D_i - D_j Q_i = 0
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const Vec& prod = alg.basis_product(i, j);
      const FpMatrix& sj = s.action(j);
      const FpMatrix& qi = q.action(i);
      for (std::size_t r = 0; r < cd.rows; ++r)
        for (std::size_t c = 0; c < cd.cols; ++c) {
          Vec eq(unknowns, 0);
          for (std::size_t k = 0; k < alg.dim(); ++k)
            if (prod[k]) eq[idx(k, r, c)] = add_mod(eq[idx(k, r, c)], prod[k], p);
          for (std::size_t t = 0; t < cd.rows; ++t)
            if (sj.at(r, t)) eq[idx(i, t, c)] = sub_mod(eq[idx(i, t, c)], sj.at(r, t), p);
          for (std::size_t t = 0; t < cd.cols; ++t)
            if (qi.at(t, c)) eq[idx(j, r, t)] = sub_mod(eq[idx(j, r, t)], qi.at(t, c), p);
          eqs.push_back(std::move(eq));
        }
    }
  // The unit acts by zero in the corner.
  for (std::size_t r = 0; r < cd.rows; ++r)
    for (std::size_t c = 0; c < cd.cols; ++c) {
      Vec eq(unknowns, 0);
      for (std::size_t k = 0; k < alg.dim(); ++k)
        if (alg.unit()[k]) eq[idx(k, r, c)] = alg.unit()[k];
      eqs.push_back(std::move(eq));
    }
  cd.cocycles = nullspace_basis(FpMatrix::from_row_vectors(p, eqs, unknowns));
  Subspace acc(p, unknowns);
  for (std::size_t r = 0; r < cd.rows; ++r)
    for (std::size_t c = 0; c < cd.cols; ++c) {
      FpMatrix t(p, cd.rows, cd.cols);
      t.set(r, c, 1);
      Vec v(unknowns, 0);
      for (std::size_t k = 0; k < alg.dim(); ++k) {
        FpMatrix d = s.action(k) * t - t * q.action(k);
        for (std::size_t a = 0; a < cd.rows; ++a)
          for (std::size_t b = 0; b < cd.cols; ++b) v[idx(k, a, b)] = d.at(a, b);
      }
      acc.add(v);
    }
  for (const auto& z : cd.cocycles)
    if (acc.add(z)) cd.class_basis.push_back(z);
  return cd;
}

Module extension_module(const Module& s, const Module& q, const std::vector<FpMatrix>& cocycle) {
  const auto& alg = s.algebra();
  const std::size_t n = s.dim() + q.dim();
  std::vector<FpMatrix> action;
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    FpMatrix x(alg->p(), n, n);
    x.paste(0, 0, s.action(k));
    x.paste(s.dim(), s.dim(), q.action(k));
    if (s.dim() && q.dim()) x.paste(0, s.dim(), cocycle[k]);
    action.push_back(std::move(x));
  }
  return Module::trusted(alg, std::move(action));
}

namespace {

// All multisets of list indices whose dims sum to `total`.
void multisets(const std::vector<Module>& list, std::size_t start, std::size_t total, std::vector<std::size_t>& cur,
               std::vector<std::vector<std::size_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < list.size(); ++i) {
    if (list[i].dim() > total) continue;
    cur.push_back(i);
    multisets(list, i, total - list[i].dim(), cur, out);
    cur.pop_back();
  }
}

}  // namespace

EnumerationResult enumerate_indecomposables(const AlgebraPtr& alg, std::size_t max_dim, std::size_t cap) {
  EnumerationResult res;
  auto simple_list = simples(alg, false);
  std::vector<Module> found;
  for (std::size_t d = 1; d <= max_dim; ++d) {
    std::vector<Module> level;
    for (const auto& s : simple_list)
      if (s.dim() == d) level.push_back(s);
    for (const auto& s : simple_list) {
      if (s.dim() >= d) continue;
      std::vector<std::vector<std::size_t>> combos;
      std::vector<std::size_t> cur;
      multisets(found, 0, d - s.dim(), cur, combos);
      for (const auto& combo : combos) {
        std::vector<Module> summands;
        for (auto i : combo) summands.push_back(found[i]);
        Module q = direct_sum(alg, summands).module;
        CocycleData cd = cocycle_data(s, q);
        const std::size_t e = cd.class_basis.size();
        if (e == 0) continue;
        CoefficientCounter counter(alg->p(), e);
        while (counter.next()) {
          if (++res.candidates > cap) throw CapExceeded("indecomposable enumeration exceeds cap");
          Vec z = linear_combination(alg->p(), cd.class_basis, counter.value(), cd.count * cd.rows * cd.cols);
          Module m = extension_module(s, q, cd.unpack(z));
          if (find_isomorphic(m, level)) continue;
          if (!is_indecomposable(m)) continue;
          level.push_back(canonical_form(m).first);
        }
      }
    }
    std::stable_sort(level.begin(), level.end(), canonical_less);
    found.insert(found.end(), level.begin(), level.end());
  }
  res.modules = std::move(found);
  return res;
}

}  // namespace stabg
