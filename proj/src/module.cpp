#include "stabg/module.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "stabg/errors.hpp"

namespace stabg {

namespace {

FpMatrix action_sum(Scalar p, std::size_t n, const std::vector<FpMatrix>& action, const Vec& a) {
  FpMatrix out(p, n, n);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) out = out + (a[i] == 1 ? action[i] : action[i].scaled(a[i]));
  return out;
}

// Action of X on an invariant subspace S, in coordinates of S's echelon basis.
FpMatrix restricted_matrix(const Subspace& s, const FpMatrix& x) {
  const auto& basis = s.basis();
  FpMatrix out(x.p(), basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto c = s.coordinates(x.apply(basis[j]));
    if (!c) throw std::logic_error("subspace is not invariant");
    for (std::size_t i = 0; i < basis.size(); ++i) out.set(i, j, (*c)[i]);
  }
  return out;
}

struct QuotientData {
  std::vector<std::size_t> keep;
  FpMatrix projection;  // keep.size() × n
};

QuotientData quotient_data(const Subspace& s) {
  QuotientData q;
  q.keep = s.complement_positions();
  q.projection = FpMatrix(s.p(), q.keep.size(), s.ambient());
  for (std::size_t j = 0; j < s.ambient(); ++j) {
    Vec e(s.ambient(), 0);
    e[j] = 1;
    Vec r = s.reduce(e);
    for (std::size_t i = 0; i < q.keep.size(); ++i) q.projection.set(i, j, r[q.keep[i]]);
  }
  return q;
}

// Map induced by X on the quotient described by q.
FpMatrix induced_matrix(const QuotientData& q, const FpMatrix& x) {
  return q.projection * x.select_cols(q.keep);
}

}  // namespace

// ---------------------------------------------------------------------------

Module Module::trusted(AlgebraPtr alg, std::vector<FpMatrix> action) {
  Module m;
  auto d = std::make_shared<Data>();
  d->dim = action.empty() ? 0 : action[0].rows();
  d->alg = std::move(alg);
  d->action = std::move(action);
  m.data_ = std::move(d);
  return m;
}

Module Module::create(AlgebraPtr alg, std::vector<FpMatrix> action) {
  if (action.size() != alg->dim()) throw DimensionMismatch("one action matrix per algebra basis element is required");
  const std::size_t n = action[0].rows();
  for (const auto& a : action) {
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("action matrices must be square of equal size");
    if (a.p() != alg->p()) throw AlgebraMismatch("action matrices over the wrong field");
  }
  if (!action_sum(alg->p(), n, action, alg->unit()).is_identity())
    throw InputError("the unit does not act as the identity");
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      FpMatrix lhs = action_sum(alg->p(), n, action, alg->basis_product(i, j));
      if (lhs != action[j] * action[i])
        throw InputError("action does not respect the product e" + std::to_string(i) + "·e" + std::to_string(j));
    }
  return trusted(std::move(alg), std::move(action));
}

FpMatrix Module::act(const Vec& a) const { return action_sum(p(), dim(), actions(), a); }

bool Module::operator==(const Module& o) const {
  if (data_ == o.data_) return true;
  if (!data_ || !o.data_) return false;
  return same_algebra(algebra(), o.algebra()) && actions() == o.actions();
}

// ---------------------------------------------------------------------------

ModuleHom ModuleHom::trusted(Module source, Module target, FpMatrix matrix) {
  ModuleHom h;
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.matrix_ = std::move(matrix);
  return h;
}

ModuleHom ModuleHom::create(Module source, Module target, FpMatrix matrix) {
  if (!same_algebra(source.algebra(), target.algebra())) throw AlgebraMismatch("hom between modules over different algebras");
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
    throw DimensionMismatch("hom matrix must be dim(target) × dim(source)");
  for (std::size_t g : source.algebra()->generator_indices())
    if (matrix * source.action(g) != target.action(g) * matrix)
      throw InputError("matrix does not commute with the action of e" + std::to_string(g));
  return trusted(std::move(source), std::move(target), std::move(matrix));
}

ModuleHom ModuleHom::identity(const Module& m) { return trusted(m, m, FpMatrix::identity(m.p(), m.dim())); }

ModuleHom ModuleHom::zero(const Module& source, const Module& target) {
  return trusted(source, target, FpMatrix(source.p(), target.dim(), source.dim()));
}

bool ModuleHom::is_injective() const { return rank(matrix_) == source_.dim(); }
bool ModuleHom::is_surjective() const { return rank(matrix_) == target_.dim(); }

ModuleHom ModuleHom::operator+(const ModuleHom& o) const { return trusted(source_, target_, matrix_ + o.matrix_); }
ModuleHom ModuleHom::operator-(const ModuleHom& o) const { return trusted(source_, target_, matrix_ - o.matrix_); }
ModuleHom ModuleHom::scaled(Scalar s) const { return trusted(source_, target_, matrix_.scaled(s)); }

ModuleHom ModuleHom::after(const ModuleHom& g) const {
  if (g.target().dim() != source_.dim()) throw DimensionMismatch("homs are not composable");
  return trusted(g.source(), target_, matrix_ * g.matrix());
}

ShortExact ShortExact::create(ModuleHom f, ModuleHom g) {
  if (f.target().dim() != g.source().dim()) throw DimensionMismatch("short exact sequence maps are not composable");
  if (!f.is_injective()) throw InputError("first map of a short exact sequence must be injective");
  if (!g.is_surjective()) throw InputError("second map of a short exact sequence must be surjective");
  if (!(g.matrix() * f.matrix()).is_zero() || f.source().dim() + g.target().dim() != f.target().dim())
    throw InputError("image of the first map is not the kernel of the second");
  return ShortExact{std::move(f), std::move(g)};
}

// ---------------------------------------------------------------------------

Module regular_module(const AlgebraPtr& alg) {
  std::vector<FpMatrix> action;
  for (std::size_t i = 0; i < alg->dim(); ++i) action.push_back(alg->right_multiplication(alg->basis_vector(i)));
  return Module::trusted(alg, std::move(action));
}

Module zero_module(const AlgebraPtr& alg) {
  return Module::trusted(alg, std::vector<FpMatrix>(alg->dim(), FpMatrix(alg->p(), 0, 0)));
}

Module coregular(const AlgebraPtr& alg) {
  std::vector<FpMatrix> action;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    action.push_back(alg->left_multiplication(alg->basis_vector(i)).transpose());
  return Module::trusted(alg, std::move(action));
}

Module trivial_module(const AlgebraPtr& alg) {
  Ideal rad = jacobson_radical(alg);
  if (rad.dim() + 1 != alg->dim()) throw UnsupportedSemisimpleType("trivial module needs a split local algebra");
  auto q = quotient_by_ideal(rad);
  std::vector<FpMatrix> action;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    FpMatrix a(alg->p(), 1, 1);
    a.set(0, 0, q.projection.matrix().at(0, i));
    action.push_back(a);
  }
  // The quotient is spanned by the image of the unit, which maps to a multiple of the basis vector.
  Scalar u = q.projection.apply(alg->unit())[0];
  Scalar inv = inv_mod(u, alg->p());
  for (auto& a : action) a.set(0, 0, mul_mod(a.at(0, 0), inv, alg->p()));
  return Module::trusted(alg, std::move(action));
}

// ---------------------------------------------------------------------------

std::vector<ModuleHom> hom_space(const Module& m, const Module& n) {
  if (!same_algebra(m.algebra(), n.algebra())) throw AlgebraMismatch("hom space between different algebras");
  const std::size_t dm = m.dim(), dn = n.dim();
  const Scalar p = m.p();
  if (dm == 0 || dn == 0) return {};
  const auto& gens = m.algebra()->generator_indices();
  const std::size_t unknowns = dn * dm;
  FpMatrix sys(p, gens.size() * unknowns, unknowns);
  std::size_t row = 0;
  for (std::size_t g : gens) {
    const FpMatrix& am = m.action(g);
    const FpMatrix& an = n.action(g);
    // (F·A^M - A^N·F)[r][c] = 0
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c, ++row) {
        Scalar* eq = sys.row_ptr(row);
        for (std::size_t k = 0; k < dm; ++k)
          if (am.at(k, c)) eq[r * dm + k] = add_mod(eq[r * dm + k], am.at(k, c), p);
        for (std::size_t k = 0; k < dn; ++k)
          if (an.at(r, k)) eq[k * dm + c] = sub_mod(eq[k * dm + c], an.at(r, k), p);
      }
  }
  std::vector<ModuleHom> out;
  auto basis = nullspace_basis(sys);
  for (const auto& v : basis) {
    FpMatrix f(p, dn, dm);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) f.set(r, c, v[r * dm + c]);
    out.push_back(ModuleHom::trusted(m, n, std::move(f)));
  }
  return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_space(m, n).size(); }

ModuleHom combine(const std::vector<ModuleHom>& basis, const Vec& coeffs, const Module& source, const Module& target) {
  FpMatrix f(source.p(), target.dim(), source.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i]) f = f + basis[i].matrix().scaled(coeffs[i]);
  return ModuleHom::trusted(source, target, std::move(f));
}

// ---------------------------------------------------------------------------

bool is_invariant(const Module& m, const Subspace& s) {
  for (const auto& a : m.actions())
    for (const auto& v : s.basis())
      if (!s.contains(a.apply(v))) return false;
  return true;
}

Subspace submodule_generated(const Module& m, const std::vector<Vec>& vectors) {
  Subspace s(m.p(), m.dim());
  std::deque<Vec> todo(vectors.begin(), vectors.end());
  const auto& gens = m.algebra()->generator_indices();
  while (!todo.empty()) {
    Vec v = std::move(todo.front());
    todo.pop_front();
    if (!s.add(v)) continue;
    for (std::size_t g : gens) todo.push_back(m.action(g).apply(v));
  }
  return s;
}

SubmoduleResult submodule(const Module& m, const Subspace& s) {
  std::vector<FpMatrix> action;
  for (const auto& a : m.actions()) action.push_back(restricted_matrix(s, a));
  if (s.dim() == 0) action.assign(m.algebra()->dim(), FpMatrix(m.p(), 0, 0));
  Module sub = Module::trusted(m.algebra(), std::move(action));
  return {sub, ModuleHom::trusted(sub, m, FpMatrix::from_columns(m.p(), s.basis(), m.dim()))};
}

QuotientModule quotient(const Module& m, const Subspace& s) {
  QuotientData q = quotient_data(s);
  std::vector<FpMatrix> action;
  for (const auto& a : m.actions()) action.push_back(induced_matrix(q, a));
  Module quo = Module::trusted(m.algebra(), std::move(action));
  return {quo, ModuleHom::trusted(m, quo, q.projection)};
}

SubmoduleResult kernel(const ModuleHom& f) {
  return submodule(f.source(), Subspace(f.source().p(), f.source().dim(), nullspace_basis(f.matrix())));
}

SubmoduleResult image(const ModuleHom& f) {
  return submodule(f.target(), Subspace(f.target().p(), f.target().dim(), image_basis(f.matrix())));
}

QuotientModule cokernel(const ModuleHom& f) {
  return quotient(f.target(), Subspace(f.target().p(), f.target().dim(), image_basis(f.matrix())));
}

ModuleHom corestrict_to_image(const ModuleHom& f, const SubmoduleResult& im) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < im.module.dim(); ++j) cols.push_back(im.inclusion.matrix().column(j));
  Subspace s(f.target().p(), f.target().dim(), cols);
  FpMatrix out(f.target().p(), s.dim(), f.source().dim());
  for (std::size_t j = 0; j < f.source().dim(); ++j) {
    auto c = s.coordinates(f.matrix().column(j));
    for (std::size_t i = 0; i < s.dim(); ++i) out.set(i, j, (*c)[i]);
  }
  return ModuleHom::trusted(f.source(), im.module, std::move(out));
}

// ---------------------------------------------------------------------------

DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<Module>& parts) {
  DirectSum ds;
  std::size_t total = 0;
  for (const auto& m : parts) total += m.dim();
  std::vector<FpMatrix> action;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    std::vector<FpMatrix> blocks;
    for (const auto& m : parts) blocks.push_back(m.action(i));
    action.push_back(blocks.empty() ? FpMatrix(alg->p(), 0, 0) : FpMatrix::block_diag(blocks));
  }
  ds.module = Module::trusted(alg, std::move(action));
  std::size_t off = 0;
  for (const auto& m : parts) {
    FpMatrix inj(alg->p(), total, m.dim()), proj(alg->p(), m.dim(), total);
    for (std::size_t k = 0; k < m.dim(); ++k) {
      inj.set(off + k, k, 1);
      proj.set(k, off + k, 1);
    }
    ds.injections.push_back(ModuleHom::trusted(m, ds.module, std::move(inj)));
    ds.projections.push_back(ModuleHom::trusted(ds.module, m, std::move(proj)));
    off += m.dim();
  }
  return ds;
}

ModuleHom block_hom(const DirectSum& source, const DirectSum& target, const std::vector<std::vector<ModuleHom>>& blocks) {
  FpMatrix f(source.module.p(), target.module.dim(), source.module.dim());
  for (std::size_t j = 0; j < blocks.size(); ++j)
    for (std::size_t i = 0; i < blocks[j].size(); ++i)
      f = f + target.injections[j].matrix() * blocks[j][i].matrix() * source.projections[i].matrix();
  return ModuleHom::trusted(source.module, target.module, std::move(f));
}

Pushout pushout(const ModuleHom& f, const ModuleHom& c) {
  const auto& alg = f.source().algebra();
  DirectSum yz = direct_sum(alg, {f.target(), c.target()});
  FpMatrix m = yz.injections[0].matrix() * f.matrix() - yz.injections[1].matrix() * c.matrix();
  auto q = cokernel(ModuleHom::trusted(f.source(), yz.module, std::move(m)));
  return {q.module, q.projection.after(yz.injections[0]), q.projection.after(yz.injections[1])};
}

Pullback pullback(const ModuleHom& f, const ModuleHom& g) {
  const auto& alg = f.source().algebra();
  DirectSum yz = direct_sum(alg, {f.source(), g.source()});
  FpMatrix m = f.matrix() * yz.projections[0].matrix() - g.matrix() * yz.projections[1].matrix();
  auto k = kernel(ModuleHom::trusted(yz.module, f.target(), std::move(m)));
  return {k.module, yz.projections[0].after(k.inclusion), yz.projections[1].after(k.inclusion)};
}

std::vector<Subspace> submodules(const Module& m, std::size_t cap) {
  double total = 1;
  for (std::size_t i = 0; i < m.dim(); ++i) total *= m.p();
  if (total > double(1u << 22)) throw CapExceeded("submodule enumeration: ambient space too large");
  std::set<Subspace> cyclic;
  CoefficientCounter counter(m.p(), m.dim());
  while (counter.next()) {
    cyclic.insert(submodule_generated(m, {counter.value()}));
    if (cyclic.size() > cap) throw CapExceeded("submodule enumeration exceeds cap");
  }
  std::set<Subspace> seen{Subspace(m.p(), m.dim())};
  std::deque<Subspace> todo{Subspace(m.p(), m.dim())};
  while (!todo.empty()) {
    Subspace s = std::move(todo.front());
    todo.pop_front();
    for (const auto& c : cyclic) {
      Subspace t = s;
      bool grew = false;
      for (const auto& v : c.basis()) grew |= t.add(v);
      if (!grew || seen.count(t)) continue;
      seen.insert(t);
      if (seen.size() > cap) throw CapExceeded("submodule enumeration exceeds cap");
      todo.push_back(std::move(t));
    }
  }
  std::vector<Subspace> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Subspace kernel_translate(const Module& m, const AlgebraMorphism& phi) {
  if (!phi.surjective()) throw NotSurjective("base change needs a surjective algebra morphism");
  if (!same_algebra(m.algebra(), phi.source())) throw AlgebraMismatch("module is not over the source of the morphism");
  Subspace s(m.p(), m.dim());
  for (const auto& k : nullspace_basis(phi.matrix())) {
    FpMatrix a = m.act(k);
    for (std::size_t j = 0; j < m.dim(); ++j) s.add(a.column(j));
  }
  return s;
}

}  // namespace

BaseChange base_change(const Module& m, const AlgebraMorphism& phi) {
  Subspace s = kernel_translate(m, phi);
  QuotientData q = quotient_data(s);
  const auto& c = phi.target();
  std::vector<FpMatrix> action;
  for (std::size_t j = 0; j < c->dim(); ++j) action.push_back(induced_matrix(q, m.act(phi.preimage(c->basis_vector(j)))));
  if (q.keep.empty()) action.assign(c->dim(), FpMatrix(m.p(), 0, 0));
  return {Module::trusted(c, std::move(action)), q.projection};
}

ModuleHom base_change_hom(const ModuleHom& f, const AlgebraMorphism& phi) {
  BaseChange bm = base_change(f.source(), phi), bn = base_change(f.target(), phi);
  QuotientData qm = quotient_data(kernel_translate(f.source(), phi));
  FpMatrix out = bn.quotient * f.matrix().select_cols(qm.keep);
  return ModuleHom::trusted(bm.module, bn.module, std::move(out));
}

Module restrict_module(const Module& n, const AlgebraMorphism& phi) {
  if (!same_algebra(n.algebra(), phi.target())) throw AlgebraMismatch("module is not over the target of the morphism");
  std::vector<FpMatrix> action;
  for (std::size_t b = 0; b < phi.source()->dim(); ++b) action.push_back(n.act(phi.matrix().column(b)));
  return Module::trusted(phi.source(), std::move(action));
}

ModuleHom restrict_hom(const ModuleHom& f, const AlgebraMorphism& phi) {
  return ModuleHom::trusted(restrict_module(f.source(), phi), restrict_module(f.target(), phi), f.matrix());
}

// ---------------------------------------------------------------------------

Module induce(const Module& n, const AlgebraMorphism& inclusion, const std::vector<Vec>& left_basis) {
  const auto& A = *inclusion.source();
  const auto& B = *inclusion.target();
  if (!same_algebra(n.algebra(), inclusion.source())) throw AlgebraMismatch("module is not over the subalgebra");
  const std::size_t r = left_basis.size(), da = A.dim(), dn = n.dim();
  if (r * da != B.dim()) throw InputError("basis size is inconsistent with freeness");
  // Column (j, l) of `frame` is ι(e_l)·b_j.
  std::vector<Vec> frame;
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < da; ++l) frame.push_back(B.multiply(inclusion.matrix().column(l), left_basis[j]));
  auto frame_inv = inverse(FpMatrix::from_columns(B.p(), frame, B.dim()));
  if (!frame_inv) throw InputError("supplied elements are not a left-free basis");
  std::vector<FpMatrix> action;
  for (std::size_t k = 0; k < B.dim(); ++k) {
    FpMatrix act(B.p(), r * dn, r * dn);
    for (std::size_t i = 0; i < r; ++i) {
      Vec coords = frame_inv->apply(B.multiply(left_basis[i], B.basis_vector(k)));
      for (std::size_t j = 0; j < r; ++j) {
        Vec a(coords.begin() + j * da, coords.begin() + (j + 1) * da);
        act.paste(j * dn, i * dn, n.act(a));
      }
    }
    action.push_back(std::move(act));
  }
  if (r * dn == 0) action.assign(B.dim(), FpMatrix(B.p(), 0, 0));
  return Module::trusted(inclusion.target(), std::move(action));
}

ModuleHom induce_hom(const ModuleHom& f, const AlgebraMorphism& inclusion, const std::vector<Vec>& left_basis) {
  std::vector<FpMatrix> blocks(left_basis.size(), f.matrix());
  return ModuleHom::trusted(induce(f.source(), inclusion, left_basis), induce(f.target(), inclusion, left_basis),
                            FpMatrix::block_diag(blocks));
}

Module dual(const Module& m) {
  std::vector<FpMatrix> action;
  for (const auto& a : m.actions()) action.push_back(a.transpose());
  return Module::trusted(opposite(m.algebra()), std::move(action));
}

ModuleHom dual_hom(const ModuleHom& f) {
  return ModuleHom::trusted(dual(f.target()), dual(f.source()), f.matrix().transpose());
}

std::pair<Module, ModuleHom> transport(const Module& m, const FpMatrix& p) {
  auto inv = inverse(p);
  if (!inv) throw InputError("basis change matrix is singular");
  std::vector<FpMatrix> action;
  for (const auto& a : m.actions()) action.push_back(p * a * *inv);
  Module out = Module::trusted(m.algebra(), std::move(action));
  return {out, ModuleHom::trusted(m, out, p)};
}

}  // namespace stabg
