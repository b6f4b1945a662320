#include "stabg/kzero.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "stabg/decomp.hpp"
#include "stabg/errors.hpp"

namespace stabg {

namespace {

IntMatrix stack(const std::vector<const IntMatrix*>& parts, std::size_t cols) {
  IntMatrix out(0, cols);
  for (const auto* m : parts)
    for (std::size_t r = 0; r < m->rows(); ++r) out.append_row(m->row(r));
  return out;
}

IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  IntMatrix out(0, cols);
  for (const auto& r : rows) out.append_row(r);
  return out;
}

std::vector<BigInt> unit_vector(std::size_t n, std::size_t i) {
  std::vector<BigInt> e(n);
  e[i] = 1;
  return e;
}

std::vector<BigInt> row_times(const std::vector<BigInt>& x, const IntMatrix& m) {
  std::vector<BigInt> out(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m.at(i, j);
  return out;
}

bool all_zero(const std::vector<BigInt>& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& b) { return b == 0; });
}

std::string vector_text(const std::vector<BigInt>& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    BigInt c = v[i];
    if (c < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    if (c != 1) os << c;
    os << "[" << labels[i] << "]";
    first = false;
  }
  return first ? "0" : os.str();
}

/// Module name in a labelled list, or the ⊕ of its summand names.
std::string module_text(const Module& m, const std::vector<Module>& mods, const std::vector<std::string>& labels) {
  if (m.dim() == 0) return "0";
  std::string out;
  for (const auto& part : krull_schmidt(m).parts) {
    auto idx = find_isomorphic(part, mods);
    out += (out.empty() ? "" : "⊕") + (idx ? labels[*idx] : "dim " + std::to_string(part.dim()));
  }
  return out;
}

bool may_be_incomplete(const AlgebraPtr& alg, std::size_t max_dim, std::size_t found) {
  try {
    return enumerate_indecomposables(alg, max_dim + 1, 1u << 16).modules.size() > found;
  } catch (const CapExceeded&) {
    return true;
  }
}

AbelianGroupPresentation free_on(std::vector<std::string> labels, std::vector<Module> gens) {
  std::size_t n = labels.size();
  return present(std::move(labels), std::move(gens), IntMatrix(0, n), {});
}

}  // namespace

AbelianGroupPresentation present(std::vector<std::string> labels, std::vector<Module> generators, IntMatrix relations,
                                 std::vector<std::string> relation_text) {
  AbelianGroupPresentation g;
  const std::size_t n = labels.size();
  g.labels = std::move(labels);
  g.generators = std::move(generators);
  if (relations.rows() == 0) relations = IntMatrix(0, n);
  g.relations = std::move(relations);
  g.relation_text = std::move(relation_text);
  g.group = cokernel_presentation(g.relations, n);
  if (g.relations.rows() == 0) {
    g.v_ = IntMatrix::identity(n);
  } else {
    SmithForm s = smith_normal_form(g.relations);
    g.v_ = s.v;
    g.diag_.assign(s.diagonal.begin(), s.diagonal.begin() + s.rank);
  }
  for (std::size_t i = 0; i < n; ++i) g.generator_images.push_back(g.reduce(unit_vector(n, i)));
  return g;
}

std::vector<BigInt> AbelianGroupPresentation::reduce(const std::vector<BigInt>& x) const {
  if (x.size() != size()) throw DimensionMismatch("vector length differs from the number of generators");
  std::vector<BigInt> z = row_times(x, v_), out;
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    if (diag_[i] == 1) continue;
    BigInt r = z[i] % diag_[i];
    if (r < 0) r += diag_[i];
    out.push_back(r);
  }
  for (std::size_t i = diag_.size(); i < z.size(); ++i) out.push_back(z[i]);
  return out;
}

bool AbelianGroupPresentation::is_zero(const std::vector<BigInt>& x) const { return all_zero(reduce(x)); }

std::vector<std::string> dimension_labels(const std::vector<Module>& mods, const std::string& letter) {
  std::map<std::size_t, std::size_t> total, seen;
  for (const auto& m : mods) ++total[m.dim()];
  std::vector<std::string> out;
  for (const auto& m : mods) {
    std::string l = letter + std::to_string(m.dim());
    if (total[m.dim()] > 1) l += "." + std::to_string(++seen[m.dim()]);
    out.push_back(l);
  }
  return out;
}

// ---------------------------------------------------------------------------

AbelianGroupPresentation g0(const AlgebraPtr& alg) {
  auto s = simples(alg, true);
  auto labels = dimension_labels(s, "S");
  if (s.size() == 1) labels = {"S"};
  return free_on(labels, s);
}

std::vector<BigInt> class_in_g0(const Module& m) {
  auto s = simples(m.algebra(), true);
  std::vector<BigInt> out(s.size());
  Module cur = m;
  while (cur.dim() > 0) {
    Subspace rad = radical_subspace(cur);
    Module layer = quotient(cur, rad).module;
    for (std::size_t i = 0; i < s.size(); ++i) out[i] += hom_dim(s[i], layer);
    cur = submodule(cur, rad).module;
  }
  return out;
}

AbelianGroupPresentation k0(const AlgebraPtr& alg) {
  (void)simples(alg, true);
  const auto& ps = projective_data(alg).projectives;
  auto labels = dimension_labels(ps, "P");
  if (ps.size() == 1) labels = {"P"};
  return free_on(labels, ps);
}

GroupMap k0_to_g0(const AlgebraPtr& alg) {
  auto src = k0(alg);
  GroupMap f;
  std::vector<std::vector<BigInt>> rows;
  for (const auto& p : src.generators) rows.push_back(class_in_g0(p));
  f.matrix = from_rows(rows, simples(alg, true).size());
  return f;
}

AbelianGroupPresentation rep_split(const AlgebraPtr& alg, std::size_t max_dim) {
  auto mods = enumerate_indecomposables(alg, max_dim).modules;
  auto g = free_on(dimension_labels(mods), mods);
  g.incomplete = may_be_incomplete(alg, max_dim, mods.size());
  if (g.incomplete) g.notes.push_back("indecomposables above dimension " + std::to_string(max_dim) + " exist");
  return g;
}

AbelianGroupPresentation stabrep_split(const AlgebraPtr& alg, std::size_t max_dim) {
  auto mods = enumerate_indecomposables(alg, max_dim).modules;
  auto labels = dimension_labels(mods);
  std::vector<Module> keep;
  std::vector<std::string> kl;
  for (std::size_t i = 0; i < mods.size(); ++i)
    if (!is_projective(mods[i])) {
      keep.push_back(mods[i]);
      kl.push_back(labels[i]);
    }
  auto g = free_on(kl, keep);
  g.incomplete = may_be_incomplete(alg, max_dim, mods.size());
  if (g.incomplete) g.notes.push_back("indecomposables above dimension " + std::to_string(max_dim) + " exist");
  return g;
}

std::vector<BigInt> class_of(const Module& m, const AbelianGroupPresentation& g, bool projectives_zero) {
  std::vector<BigInt> v(g.size());
  if (m.dim() == 0) return v;
  for (const auto& part : krull_schmidt(m).parts) {
    if (projectives_zero && is_projective(part)) continue;
    auto idx = find_isomorphic(part, g.generators);
    if (!idx) throw ClosureEscape("summand of dimension " + std::to_string(part.dim()) + " is not a generator");
    v[*idx] += 1;
  }
  return v;
}

AbelianGroupPresentation gst0(const AlgebraPtr& alg, std::size_t max_dim) {
  auto all = enumerate_indecomposables(alg, max_dim).modules;
  auto all_labels = dimension_labels(all);
  std::vector<Module> gens;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!is_projective(all[i])) {
      gens.push_back(all[i]);
      labels.push_back(all_labels[i]);
    }
  auto base = free_on(labels, gens);
  std::set<std::vector<BigInt>> seen;
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::string> texts;
  std::size_t skipped = 0;
  for (std::size_t li = 0; li < all.size(); ++li)
    for (std::size_t ni = 0; ni < all.size(); ++ni) {
      const Module& l = all[li];
      const Module& n = all[ni];
      Ext1 e = ext1(n, l);
      if (e.dim == 0) continue;
      CoefficientCounter cc(alg->p(), e.dim);
      while (cc.next()) {
        Extension x = extension_from_class(e, n, l, cc.value());
        const Module& y = x.sequence.middle();
        std::vector<BigInt> cy;
        try {
          cy = class_of(y, base, true);
        } catch (const ClosureEscape&) {
          ++skipped;
          continue;
        }
        std::vector<BigInt> r = class_of(l, base, true), cn = class_of(n, base, true);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] += cn[k] - cy[k];
        if (all_zero(r) || !seen.insert(r).second) continue;
        rows.push_back(r);
        texts.push_back("[" + all_labels[li] + "]-[" + module_text(y, all, all_labels) + "]+[" + all_labels[ni] +
                        "]");
      }
    }
  auto g = present(labels, gens, from_rows(rows, gens.size()), texts);
  g.incomplete = skipped > 0 || may_be_incomplete(alg, max_dim, all.size());
  if (skipped)
    g.notes.push_back(std::to_string(skipped) + " extensions skipped: middle term has a summand above dimension " +
                      std::to_string(max_dim));
  if (g.incomplete) g.notes.push_back("enumeration bound may hide generators or relations");
  return g;
}

AbelianGroupPresentation waldhausen_k0(const WaldhausenSpec& spec, std::vector<Module> universe, std::size_t max_dim,
                                       std::size_t budget, std::uint64_t seed) {
  const auto& alg = spec.algebra;
  if (universe.empty()) {
    universe.push_back(zero_module(alg));
    for (auto& m : enumerate_indecomposables(alg, max_dim).modules) universe.push_back(m);
  }
  std::vector<Module> gens;
  for (const auto& u : universe) {
    if (!same_algebra(u.algebra(), alg)) throw AlgebraMismatch("universe module over another algebra");
    if (u.dim() == 0) continue;
    for (const auto& part : krull_schmidt(u).parts)
      if (!find_isomorphic(part, gens)) gens.push_back(part);
  }
  std::sort(gens.begin(), gens.end(), canonical_less);
  auto labels = dimension_labels(gens);
  auto base = free_on(labels, gens);
  auto name = [&](const Module& m) { return module_text(m, gens, labels); };

  std::set<std::vector<BigInt>> seen;
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::string> texts;
  auto add = [&](std::vector<BigInt> r, std::string text) {
    if (all_zero(r) || !seen.insert(r).second) return;
    rows.push_back(std::move(r));
    texts.push_back(std::move(text));
  };

  const std::size_t n = universe.size();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total = std::min<std::uint64_t>(total + hom_count(universe[i], universe[j]), UINT64_MAX / 2);
  const bool sampled = total > budget;
  std::mt19937_64 rng(seed);
  const std::size_t per_pair = std::max<std::size_t>(1, budget / std::max<std::size_t>(1, n * n));

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Module& x = universe[i];
      const Module& y = universe[j];
      std::vector<ModuleHom> homs;
      if (!sampled) {
        homs = all_homs(x, y, budget);
      } else {
        auto basis = hom_space(x, y);
        homs.push_back(ModuleHom::zero(x, y));
        for (std::size_t s = 0; s < per_pair && !basis.empty(); ++s) {
          Vec c(basis.size());
          for (auto& v : c) v = Scalar(rng() % alg->p());
          homs.push_back(combine(basis, c, x, y));
        }
      }
      auto cx = class_of(x, base, false), cy = class_of(y, base, false);
      for (const auto& f : homs) {
        if (f.is_injective() && spec.is_cofibration(f)) {
          Module q = cokernel(f).module;
          auto cq = class_of(q, base, false);
          std::vector<BigInt> r = cy;
          for (std::size_t k = 0; k < r.size(); ++k) r[k] -= cx[k] + cq[k];
          add(r, "[" + name(y) + "]-[" + name(x) + "]-[" + name(q) + "]");
        }
        if (spec.is_weak_equivalence(f)) {
          std::vector<BigInt> r = cx;
          for (std::size_t k = 0; k < r.size(); ++k) r[k] -= cy[k];
          add(r, "[" + name(x) + "]-[" + name(y) + "]");
        }
      }
    }
  const Module zero = zero_module(alg);
  for (const auto& m : universe)
    if (m.dim() > 0 && spec.is_weak_equivalence(ModuleHom::zero(m, zero))) add(class_of(m, base, false), "[" + name(m) + "]");

  auto g = present(labels, gens, from_rows(rows, gens.size()), texts);
  g.notes.push_back(std::string(sampled ? "sampled" : "exhaustive") + " over " + std::to_string(total) + " maps");
  if (sampled) {
    g.incomplete = true;
    g.notes.push_back("sampled relations: the group may be a proper cover of the true one (seed " +
                      std::to_string(seed) + ")");
  }
  return g;
}

// ---------------------------------------------------------------------------

GroupMap induced_map(const ModuleFunctor& f, const AbelianGroupPresentation& source,
                     const AbelianGroupPresentation& target, bool projectives_zero) {
  GroupMap out;
  std::vector<std::vector<BigInt>> rows;
  for (const auto& m : source.generators) rows.push_back(class_of(f(m), target, projectives_zero));
  out.matrix = from_rows(rows, target.size());
  std::size_t bad = 0;
  for (std::size_t r = 0; r < source.relations.rows(); ++r) {
    if (target.is_zero(row_times(source.relations.row(r), out.matrix))) continue;
    if (bad++ == 0) {
      out.well_defined = false;
      out.witness = r < source.relation_text.size() ? source.relation_text[r]
                                                     : vector_text(source.relations.row(r), source.labels);
    }
  }
  if (bad) out.notes.push_back(std::to_string(bad) + " relations have nonzero image");
  return out;
}

GroupMap greedy_map(const AbelianGroupPresentation& source, const AbelianGroupPresentation& target,
                    const std::vector<std::vector<BigInt>>& images) {
  const std::size_t n = source.size();
  if (images.size() != n) throw DimensionMismatch("one image per source generator expected");
  std::vector<std::size_t> chosen;
  IntMatrix span = source.relations;
  AbelianGroup cur = source.group;
  for (std::size_t g = 0; g < n && !cur.is_trivial(); ++g) {
    IntMatrix trial = span;
    trial.append_row(unit_vector(n, g));
    AbelianGroup q = cokernel_presentation(trial, n);
    if (q == cur) continue;
    chosen.push_back(g);
    span = std::move(trial);
    cur = q;
  }
  IntMatrix c(0, n);
  for (auto g : chosen) c.append_row(unit_vector(n, g));
  IntMatrix m = stack({&c, &source.relations}, n);
  GroupMap out;
  std::vector<std::string> names;
  for (auto g : chosen) names.push_back(source.labels[g]);
  out.notes.push_back("generators: " + (names.empty() ? std::string("none") : [&] {
                        std::string s;
                        for (const auto& x : names) s += (s.empty() ? "" : ", ") + x;
                        return s;
                      }()));
  auto image_of = [&](const std::vector<BigInt>& w) {
    std::vector<BigInt> r(target.size());
    for (std::size_t k = 0; k < chosen.size(); ++k)
      for (std::size_t t = 0; t < r.size(); ++t) r[t] += w[k] * images[chosen[k]][t];
    return r;
  };
  for (const auto& k : integer_left_kernel(m)) {
    std::vector<BigInt> w(k.begin(), k.begin() + chosen.size());
    if (target.is_zero(image_of(w))) continue;
    out.well_defined = false;
    std::vector<BigInt> rel(n);
    for (std::size_t i = 0; i < chosen.size(); ++i) rel[chosen[i]] = w[i];
    out.witness = vector_text(rel, source.labels);
    break;
  }
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t g = 0; g < n; ++g) {
    auto sol = lattice_solve(m, unit_vector(n, g));
    if (!sol) throw Error("greedy generators do not span the group");
    rows.push_back(image_of(std::vector<BigInt>(sol->begin(), sol->begin() + chosen.size())));
  }
  out.matrix = from_rows(rows, target.size());
  return out;
}

GroupMap compose(const GroupMap& g, const GroupMap& f) {
  GroupMap out;
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t r = 0; r < f.matrix.rows(); ++r) rows.push_back(row_times(f.matrix.row(r), g.matrix));
  out.matrix = from_rows(rows, g.matrix.cols());
  out.well_defined = f.well_defined && g.well_defined;
  out.witness = !f.well_defined ? f.witness : g.witness;
  return out;
}

bool is_surjective(const GroupMap& f, const AbelianGroupPresentation& target) {
  return cokernel_presentation(stack({&f.matrix, &target.relations}, target.size()), target.size()).is_trivial();
}

namespace {

/// Elements x of the source with f(x) = 0 in the target, as a Z-spanning set.
std::vector<std::vector<BigInt>> kernel_vectors(const GroupMap& f, std::size_t n, const AbelianGroupPresentation& t) {
  IntMatrix m = stack({&f.matrix, &t.relations}, t.size());
  std::vector<std::vector<BigInt>> out;
  if (n == 0) return out;
  if (t.size() == 0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i));
    return out;
  }
  for (const auto& k : integer_left_kernel(m)) {
    std::vector<BigInt> x(k.begin(), k.begin() + n);
    if (!all_zero(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

bool ExactnessReport::hypotheses_passed() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.passed; });
}

ExactnessReport les_tail_check(const AlgebraMorphism& inclusion, const AlgebraMorphism& phi, std::size_t max_dim,
                               std::size_t budget, std::uint64_t seed) {
  const AlgebraPtr& a = inclusion.source();
  const AlgebraPtr& b = inclusion.target();
  const AlgebraPtr& c = phi.target();
  if (!same_algebra(b, phi.source())) throw AlgebraMismatch("the inclusion target is not the source of φ");
  if (!inclusion.injective()) throw InputError("A -> B is not injective");
  if (!phi.surjective()) throw NotSurjective("φ is not surjective");
  ExactnessReport rep;
  rep.stage = a->name() + " -> " + b->name() + " -> " + c->name();

  auto basis = is_free_over_subalgebra(inclusion, Side::Left);
  {
    Hypothesis h{"B free over A", basis.has_value(), "no free basis"};
    if (basis) {
      h.detail = "basis {";
      for (std::size_t i = 0; i < basis->size(); ++i) h.detail += (i ? "," : "") + b->format_element((*basis)[i]);
      h.detail += "}";
    }
    rep.hypotheses.push_back(h);
  }
  {
    Ideal k = kernel_ideal(phi), rad = jacobson_radical(b);
    bool ok = true;
    if (!k.basis.empty()) {
      std::vector<Vec> both = rad.basis;
      both.insert(both.end(), k.basis.begin(), k.basis.end());
      ok = rank(FpMatrix::from_columns(b->p(), both, b->dim())) == rad.dim();
    }
    rep.hypotheses.push_back({"kernel of φ in the radical of B", ok,
                              "dim ker φ = " + std::to_string(k.dim()) + ", dim rad B = " + std::to_string(rad.dim())});
  }
  for (const auto& [label, alg] : {std::pair<std::string, AlgebraPtr>{"B quasi-Frobenius", b}, {"C quasi-Frobenius", c}}) {
    Hypothesis h{label, false, ""};
    try {
      h.passed = check_quasi_frobenius(alg);
      h.detail = h.passed ? "regular module injective" : "regular module not injective";
    } catch (const Error& e) {
      h.detail = e.what();
    }
    rep.hypotheses.push_back(h);
  }
  {
    Hypothesis h{"C-projectives free", true, ""};
    try {
      Module reg = regular_module(c);
      for (const auto& p : projective_data(c).projectives) {
        if (!is_isomorphic(p, reg)) h.passed = false;
      }
      h.detail = std::to_string(projective_data(c).projectives.size()) + " indecomposable projectives";
    } catch (const Error& e) {
      h.passed = false;
      h.detail = e.what();
    }
    rep.hypotheses.push_back(h);
  }
  std::vector<Module> ub = {zero_module(b)};
  for (auto& m : enumerate_indecomposables(b, max_dim).modules) ub.push_back(m);
  {
    CheckReport r = check_relative_qf(phi, ub);
    std::string d;
    for (const auto& n : r.notes) d += (d.empty() ? "" : "; ") + n;
    rep.hypotheses.push_back({"relative cones (pointwise)", r.passed, d});
  }
  if (!rep.hypotheses_passed()) {
    rep.skipped = true;
    return rep;
  }

  rep.a = gst0(a, max_dim);
  rep.b = gst0(b, max_dim);
  rep.c = gst0(c, max_dim);
  const auto lb = *basis;
  rep.alpha = induced_map([&](const Module& n) { return induce(n, inclusion, lb); }, rep.a, rep.b);
  auto bc = [&](const Module& m) { return base_change(m, phi).module; };
  rep.naive_beta = induced_map(bc, rep.b, rep.c);

  auto rel_spec = WaldhausenSpec::create(AllowableClass::pullback(phi, AllowableClass::all(c)).with_universe(ub),
                                         AllowableClass::pushforward(phi, AllowableClass::all(c)));
  rep.relative = waldhausen_k0(rel_spec, ub, max_dim, budget, seed);
  std::vector<std::vector<BigInt>> imgs;
  for (const auto& m : rep.b.generators) imgs.push_back(class_of(m, rep.relative, false));
  rep.to_relative = greedy_map(rep.b, rep.relative, imgs);
  rep.lemma = induced_map(bc, rep.relative, rep.c);
  rep.lemma_iso = rep.lemma.well_defined && is_surjective(rep.lemma, rep.c);
  for (const auto& k : kernel_vectors(rep.lemma, rep.relative.size(), rep.c))
    if (!rep.relative.is_zero(k)) rep.lemma_iso = false;
  rep.beta = compose(rep.lemma, rep.to_relative);

  rep.surjective_at_c = rep.beta.well_defined && is_surjective(rep.beta, rep.c);
  GroupMap ab = compose(rep.beta, rep.alpha);
  rep.composite_zero = rep.alpha.well_defined && rep.beta.well_defined;
  for (std::size_t r = 0; r < ab.matrix.rows(); ++r) {
    bool z = rep.c.is_zero(ab.matrix.row(r));
    rep.composite_zero = rep.composite_zero && z;
    rep.certificates.push_back("beta(alpha[" + rep.a.labels[r] + "]) " + (z ? "= 0" : "!= 0"));
  }
  bool contained = rep.composite_zero;
  IntMatrix im = stack({&rep.alpha.matrix, &rep.b.relations}, rep.b.size());
  for (const auto& k : kernel_vectors(rep.beta, rep.b.size(), rep.c)) {
    auto sol = lattice_solve(im, k);
    if (!sol) {
      contained = false;
      rep.certificates.push_back("kernel element " + vector_text(k, rep.b.labels) + " is not in the image of alpha");
      continue;
    }
    std::vector<BigInt> w(sol->begin(), sol->begin() + rep.a.size());
    rep.certificates.push_back("kernel element " + vector_text(k, rep.b.labels) + " = alpha(" +
                               vector_text(w, rep.a.labels) + ") modulo relations");
  }
  rep.exact_at_b = contained;

  auto var_spec = WaldhausenSpec::create(AllowableClass::all(b), AllowableClass::pushforward(phi, AllowableClass::all(c)));
  rep.variant = waldhausen_k0(var_spec, ub, max_dim, budget, seed);
  imgs.clear();
  for (const auto& m : rep.b.generators) imgs.push_back(class_of(m, rep.variant, false));
  rep.variant_map = greedy_map(rep.b, rep.variant, imgs);
  rep.variant_differs = !(rep.variant.group == rep.relative.group);
  if (rep.variant_differs)
    rep.variant_map.notes.push_back("all monos as cofibrations give " + rep.variant.group.to_string() +
                                    ", the pullback cofibrations give " + rep.relative.group.to_string());

  // modules with projective base change against the image of induction
  std::vector<Module> induced;
  for (const auto& n : enumerate_indecomposables(a, max_dim).modules) induced.push_back(induce(n, inclusion, lb));
  auto labels = dimension_labels(std::vector<Module>(ub.begin() + 1, ub.end()));
  for (std::size_t i = 1; i < ub.size(); ++i) {
    if (!is_projective(base_change(ub[i], phi).module)) continue;
    bool hit = false;
    for (const auto& m : induced) hit = hit || is_isomorphic(ub[i], m).has_value();
    rep.fiber_notes.push_back(labels[i - 1] + ": projective base change, " +
                              (hit ? "induced" : "not induced from A up to dim " + std::to_string(max_dim)));
  }
  return rep;
}

std::vector<ExactnessReport> tower_check(const AlgebraPtr& b, const std::vector<TowerStage>& stages,
                                         std::size_t max_dim, std::size_t budget, std::uint64_t seed) {
  std::vector<ExactnessReport> out;
  AlgebraPtr cur = b;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    std::vector<Vec> sub, ideal;
    for (const auto& e : stages[s].sub) sub.push_back(cur->parse_element(e));
    for (const auto& e : stages[s].ideal) ideal.push_back(cur->parse_element(e));
    auto inc = subalgebra_generated(cur, sub);
    auto q = quotient_by_ideal(ideal_generated(cur, ideal));
    auto rep = les_tail_check(inc.inclusion, q.projection, max_dim, budget, seed);
    rep.stage = "stage " + std::to_string(s + 1) + ": " + rep.stage;
    out.push_back(std::move(rep));
    cur = q.algebra;
  }
  return out;
}

}  // namespace stabg
