#include "stabg/homproj.hpp"

#include <map>
#include <mutex>

#include "stabg/errors.hpp"

namespace stabg {

namespace {

FpMatrix unvec(Scalar p, std::size_t rows, std::size_t cols, const Vec& v) {
  FpMatrix m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, v[r * cols + c]);
  return m;
}

struct ProjectivePart {
  std::vector<Module> simples;
  std::vector<Module> projectives;
  std::vector<std::size_t> end_dims;
};

/// Tiny per-algebra memo. Values are computed outside the lock so computations may recurse.
template <class T>
class AlgebraCache {
 public:
  template <class F>
  const T& get(const AlgebraPtr& alg, F&& compute) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(alg.get());
      if (it != map_.end() && !it->second.first.expired()) return *it->second.second;
    }
    auto value = std::make_shared<const T>(compute());
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = map_[alg.get()];
    if (slot.first.expired() || !slot.second) slot = {alg, value};
    return *slot.second;
  }

 private:
  std::mutex mu_;
  std::map<const FiniteAlgebra*, std::pair<std::weak_ptr<const FiniteAlgebra>, std::shared_ptr<const T>>> map_;
};

const ProjectivePart& projective_part(const AlgebraPtr& alg) {
  static AlgebraCache<ProjectivePart> cache;
  return cache.get(alg, [&] {
    ProjectivePart out;
    out.simples = simples(alg, false);
    out.projectives.resize(out.simples.size());
    for (const auto& s : out.simples) out.end_dims.push_back(hom_dim(s, s));
    Decomposition d = krull_schmidt(regular_module(alg));
    for (const auto& [part, mult] : d.summands) {
      Module t = quotient(part, radical_subspace(part)).module;
      auto j = find_isomorphic(t, out.simples);
      if (!j) throw Error("top of an indecomposable projective is not simple");
      out.projectives[*j] = part;
    }
    return out;
  });
}

}  // namespace

const ProjectiveData& projective_data(const AlgebraPtr& alg) {
  static AlgebraCache<ProjectiveData> cache;
  return cache.get(alg, [&] {
    const auto& part = projective_part(alg);
    ProjectiveData out;
    out.simples = part.simples;
    out.projectives = part.projectives;
    out.end_dims = part.end_dims;
    // indecomposable injectives are duals of indecomposable projectives over the opposite algebra
    AlgebraPtr op = opposite(alg);
    const auto& op_part = projective_part(op);
    out.injectives.resize(out.simples.size());
    for (const auto& q : op_part.projectives) {
      Module d = dual(q);
      Module i = Module::trusted(alg, d.actions());
      Module soc = submodule(i, socle_subspace(i)).module;
      auto j = find_isomorphic(soc, out.simples);
      if (!j) throw Error("socle of an indecomposable injective is not simple");
      out.injectives[*j] = i;
    }
    return out;
  });
}

Module top(const Module& m) { return quotient(m, radical_subspace(m)).module; }

Module socle(const Module& m) { return submodule(m, socle_subspace(m)).module; }

ProjectiveCover projective_cover(const Module& m) {
  const auto& alg = m.algebra();
  ProjectiveCover out;
  if (m.dim() == 0) {
    out.module = zero_module(alg);
    out.epi = ModuleHom::zero(out.module, m);
    return out;
  }
  const auto& part = projective_part(alg);
  Subspace covered = radical_subspace(m);
  std::vector<Module> parts;
  std::vector<FpMatrix> columns;
  for (std::size_t j = 0; j < part.projectives.size() && covered.dim() < m.dim(); ++j) {
    for (const auto& h : hom_space(part.projectives[j], m)) {
      bool grows = false;
      for (std::size_t c = 0; c < h.matrix().cols(); ++c) grows = covered.add(h.matrix().column(c)) || grows;
      if (!grows) continue;
      parts.push_back(part.projectives[j]);
      columns.push_back(h.matrix());
      out.summands.push_back(j);
      if (covered.dim() == m.dim()) break;
    }
  }
  out.module = direct_sum(alg, parts).module;
  out.epi = ModuleHom::trusted(out.module, m, FpMatrix::hstack(columns));
  return out;
}

SubmoduleResult syzygy_inclusion(const Module& m) { return kernel(projective_cover(m).epi); }

Module syzygy(const Module& m) { return syzygy_inclusion(m).module; }

bool is_projective(const Module& m) { return projective_cover(m).module.dim() == m.dim(); }

InjectiveEnvelope injective_envelope(const Module& m) {
  Module d = dual(m);
  ProjectiveCover c = projective_cover(d);
  ModuleHom dd = dual_hom(c.epi);  // D(D M) -> D(P)
  Module inj = Module::trusted(m.algebra(), dd.target().actions());
  return {inj, ModuleHom::trusted(m, inj, dd.matrix())};
}

bool is_injective(const Module& m) { return is_projective(dual(m)); }

Subspace maps_through(const Module& m, const Module& n, const std::vector<Module>& objects) {
  Subspace s(m.p(), m.dim() * n.dim());
  for (const auto& x : objects) {
    if (x.dim() == 0) continue;
    auto into = hom_space(m, x);
    if (into.empty()) continue;
    auto out = hom_space(x, n);
    for (const auto& b : out)
      for (const auto& a : into) {
        s.add((b.matrix() * a.matrix()).data());
        if (s.dim() == s.ambient()) return s;
      }
  }
  return s;
}

namespace {

Subspace ftp_subspace(const Module& m, const Module& n) {
  Subspace s(m.p(), m.dim() * n.dim());
  if (m.dim() == 0 || n.dim() == 0) return s;
  ProjectiveCover c = projective_cover(n);
  for (const auto& g : hom_space(m, c.module)) s.add((c.epi.matrix() * g.matrix()).data());
  return s;
}

std::vector<ModuleHom> complement_reps(const std::vector<ModuleHom>& homs, Subspace s) {
  std::vector<ModuleHom> out;
  for (const auto& h : homs)
    if (s.add(h.matrix().data())) out.push_back(h);
  return out;
}

}  // namespace

Subspace projective_factoring_subspace(const Module& m, const Module& n) { return ftp_subspace(m, n); }

std::vector<ModuleHom> projective_factoring_maps(const Module& m, const Module& n) {
  std::vector<ModuleHom> out;
  Subspace s = ftp_subspace(m, n);
  for (const auto& v : s.basis())
    out.push_back(ModuleHom::trusted(m, n, unvec(m.p(), n.dim(), m.dim(), v)));
  return out;
}

std::optional<ModuleHom> factors_through_projective(const ModuleHom& f) {
  const Module& m = f.source();
  const Module& n = f.target();
  ProjectiveCover c = projective_cover(n);
  auto lifts = hom_space(m, c.module);
  const std::size_t len = m.dim() * n.dim();
  if (len == 0) return ModuleHom::zero(m, c.module);
  std::vector<Vec> cols;
  for (const auto& g : lifts) cols.push_back((c.epi.matrix() * g.matrix()).data());
  FpMatrix a = FpMatrix::from_columns(m.p(), cols, len);
  if (lifts.empty()) a = FpMatrix(m.p(), len, 0);
  FpMatrix b = FpMatrix::from_columns(m.p(), {f.matrix().data()}, len);
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  return combine(lifts, sol->particular.column(0), m, c.module);
}

StableHom stable_hom(const Module& m, const Module& n) {
  StableHom out;
  out.basis = complement_reps(hom_space(m, n), ftp_subspace(m, n));
  out.dim = out.basis.size();
  return out;
}

std::optional<ModuleHom> solve_quasi_inverse(const ModuleHom& f, const Subspace& s_mm, const Subspace& s_nn) {
  return solve_quasi_inverse(f, hom_space(f.target(), f.source()), s_mm, s_nn);
}

std::optional<ModuleHom> solve_quasi_inverse(const ModuleHom& f, const std::vector<ModuleHom>& homs,
                                             const Subspace& s_mm, const Subspace& s_nn) {
  const Module& m = f.source();
  const Module& n = f.target();
  const Scalar p = m.p();
  const std::size_t lm = m.dim() * m.dim(), ln = n.dim() * n.dim();
  const std::size_t unknowns = homs.size() + s_mm.dim() + s_nn.dim();
  FpMatrix a(p, lm + ln, unknowns);
  for (std::size_t j = 0; j < homs.size(); ++j) {
    Vec hf = (homs[j].matrix() * f.matrix()).data();
    Vec fh = (f.matrix() * homs[j].matrix()).data();
    for (std::size_t r = 0; r < lm; ++r) a.set(r, j, hf[r]);
    for (std::size_t r = 0; r < ln; ++r) a.set(lm + r, j, fh[r]);
  }
  for (std::size_t k = 0; k < s_mm.dim(); ++k)
    for (std::size_t r = 0; r < lm; ++r) a.set(r, homs.size() + k, neg_mod(s_mm.basis()[k][r], p));
  for (std::size_t k = 0; k < s_nn.dim(); ++k)
    for (std::size_t r = 0; r < ln; ++r) a.set(lm + r, homs.size() + s_mm.dim() + k, neg_mod(s_nn.basis()[k][r], p));
  FpMatrix b(p, lm + ln, 1);
  for (std::size_t i = 0; i < m.dim(); ++i) b.set(i * m.dim() + i, 0, 1);
  for (std::size_t i = 0; i < n.dim(); ++i) b.set(lm + i * n.dim() + i, 0, 1);
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  Vec c = sol->particular.column(0);
  c.resize(homs.size());
  return combine(homs, c, n, m);
}

std::optional<ModuleHom> is_stable_equivalence(const ModuleHom& f) {
  return solve_quasi_inverse(f, ftp_subspace(f.source(), f.source()), ftp_subspace(f.target(), f.target()));
}

bool stably_isomorphic(const Module& m, const Module& n) {
  auto nonprojective = [](const Module& x) {
    std::vector<Module> out;
    if (x.dim() == 0) return out;
    for (const auto& part : krull_schmidt(x).parts)
      if (!is_projective(part)) out.push_back(part);
    return out;
  };
  auto a = nonprojective(m), b = nonprojective(n);
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j)
      if (!used[j] && x.dim() == b[j].dim() && indecomposable_iso(x, b[j])) used[j] = matched = true;
    if (!matched) return false;
  }
  return true;
}

Ext1 ext1(const Module& m, const Module& n) {
  Ext1 e;
  e.cover = projective_cover(m);
  e.omega = kernel(e.cover.epi);
  const Module& om = e.omega.module;
  Subspace img(m.p(), om.dim() * n.dim());
  for (const auto& g : hom_space(e.cover.module, n)) img.add((g.matrix() * e.omega.inclusion.matrix()).data());
  e.classes = complement_reps(hom_space(om, n), img);
  e.dim = e.classes.size();
  return e;
}

Extension extension_from_class(const Module& m, const Module& n, const Vec& coords) {
  return extension_from_class(ext1(m, n), m, n, coords);
}

Extension extension_from_class(const Ext1& e, const Module& m, const Module& n, const Vec& coords) {
  if (coords.size() != e.dim) throw DimensionMismatch("extension class has the wrong number of coordinates");
  const Scalar p = m.p();
  for (auto c : coords)
    if (c >= p) throw InputError("extension class coordinate out of range");
  const Module& om = e.omega.module;
  ModuleHom h = e.dim ? combine(e.classes, coords, om, n) : ModuleHom::zero(om, n);
  Pushout po = pushout(e.omega.inclusion, h);
  const std::size_t cn = n.dim(), dy = po.module.dim();
  // q: Y -> M with q∘from_y = cover epi and q∘from_z = 0
  FpMatrix a = FpMatrix::hstack({po.from_y.matrix(), po.from_z.matrix()});
  FpMatrix b = FpMatrix::hstack({e.cover.epi.matrix(), FpMatrix(p, m.dim(), cn)});
  FpMatrix q(p, m.dim(), dy);
  if (dy && m.dim()) {
    auto sol = solve(a.transpose(), b.transpose());
    if (!sol) throw Error("pushout does not map onto the quotient");
    q = sol->particular.transpose();
  }
  ModuleHom proj = ModuleHom::create(po.module, m, q);
  return Extension{ShortExact::create(po.from_z, proj), coords};
}

}  // namespace stabg
