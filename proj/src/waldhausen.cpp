#include "stabg/waldhausen.hpp"

#include <map>
#include <random>
#include <sstream>

#include "stabg/errors.hpp"

namespace stabg {

WaldhausenSpec WaldhausenSpec::create(AllowableClass cof, AllowableClass we) {
  if (!same_algebra(cof.algebra(), we.algebra())) throw AlgebraMismatch("cofibration and weak-equivalence classes differ");
  WaldhausenSpec s{cof.algebra(), std::move(cof), std::move(we), nullptr, nullptr};
  return s;
}

bool WaldhausenSpec::is_cofibration(const ModuleHom& f) const {
  return cof_override ? cof_override(f) : is_class_mono(f, cof);
}

bool WaldhausenSpec::is_weak_equivalence(const ModuleHom& f) const {
  return we_override ? we_override(f) : is_class_stable_equivalence(f, we).has_value();
}

namespace {

ModuleHom mk(const Module& s, const Module& t, FpMatrix m) { return ModuleHom::trusted(s, t, std::move(m)); }

/// Right inverse of a surjective matrix.
FpMatrix right_inverse(const FpMatrix& q) {
  auto sol = solve(q, FpMatrix::identity(q.p(), q.rows()));
  if (!sol) throw Error("matrix is not surjective");
  return sol->particular;
}

/// Left inverse of an injective matrix.
FpMatrix left_inverse(const FpMatrix& c) {
  auto sol = solve(c.transpose(), FpMatrix::identity(c.p(), c.cols()));
  if (!sol) throw Error("matrix is not injective");
  return sol->particular.transpose();
}

/// Weak-equivalence test for maps M -> N with the per-pair data precomputed when the class allows it.
class WeTester {
 public:
  WeTester(const WaldhausenSpec& spec, const Module& m, const Module& n) : spec_(spec) {
    direct_ = !spec.we_override && spec.we.kind() != ClassKind::Pushforward;
    if (direct_) {
      homs_ = hom_space(n, m);
      smm_ = class_stable_subspace(m, m, spec.we);
      snn_ = class_stable_subspace(n, n, spec.we);
    }
  }
  bool operator()(const ModuleHom& f) const {
    if (!direct_) return spec_.is_weak_equivalence(f);
    return solve_quasi_inverse(f, homs_, *smm_, *snn_).has_value();
  }

 private:
  const WaldhausenSpec& spec_;
  bool direct_ = false;
  std::vector<ModuleHom> homs_;
  std::optional<Subspace> smm_, snn_;
};

struct PairTable {
  std::vector<ModuleHom> basis;
  std::vector<ModuleHom> homs;  ///< homs[k] has coefficient vector k in base p, little-endian
  std::vector<char> cof, we;
  std::vector<std::size_t> cofs, wes;
  std::map<Vec, std::size_t> index;
};

/// Hom tables, automorphism groups and their permutation actions over a universe.
class Tables {
 public:
  Tables(const WaldhausenSpec& spec, const std::vector<Module>& u, std::size_t cap)
      : spec_(spec), u_(u), n_(u.size()), cap_(cap), tabs_(n_ * n_), auts_(n_), aut_done_(n_, false) {}

  const std::vector<Module>& u() const { return u_; }
  std::size_t size() const { return n_; }

  const PairTable& table(std::size_t i, std::size_t j) {
    auto& t = tabs_[i * n_ + j];
    if (t) return *t;
    t = std::make_unique<PairTable>();
    t->basis = hom_space(u_[i], u_[j]);
    t->homs = all_homs(u_[i], u_[j], cap_);
    WeTester we(spec_, u_[i], u_[j]);
    for (std::size_t k = 0; k < t->homs.size(); ++k) {
      const auto& h = t->homs[k];
      t->index.emplace(h.matrix().data(), k);
      bool c = spec_.is_cofibration(h), w = we(h);
      t->cof.push_back(c);
      t->we.push_back(w);
      if (c) t->cofs.push_back(k);
      if (w) t->wes.push_back(k);
    }
    return *t;
  }

  std::size_t lookup(std::size_t i, std::size_t j, const FpMatrix& m) {
    const auto& t = table(i, j);
    auto it = t.index.find(m.data());
    if (it == t.index.end()) throw Error("map is not in the hom table");
    return it->second;
  }

  std::size_t from_coeffs(std::size_t i, std::size_t j, const Vec& c) {
    (void)table(i, j);
    std::size_t k = 0, w = 1;
    for (Scalar v : c) {
      k += v * w;
      w *= u_[i].p();
    }
    return k;
  }

  /// Automorphisms of u[i] as indices into table(i, i), identity first; empty group when too large.
  const std::vector<std::size_t>& auts(std::size_t i) {
    if (aut_done_[i]) return auts_[i];
    aut_done_[i] = true;
    const auto& t = table(i, i);
    for (std::size_t k = 0; k < t.homs.size(); ++k)
      if (t.homs[k].is_iso()) auts_[i].push_back(k);
    return auts_[i];
  }

  /// Index of a·h (a an automorphism of the target) or h·a^-1 (a of the source).
  const std::vector<std::size_t>& left_perm(std::size_t i, std::size_t j, std::size_t a) {
    auto key = std::make_tuple(i, j, a, true);
    auto it = perms_.find(key);
    if (it != perms_.end()) return it->second;
    const auto& t = table(i, j);
    const FpMatrix& am = table(j, j).homs[a].matrix();
    std::vector<std::size_t> p(t.homs.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = lookup(i, j, am * t.homs[k].matrix());
    return perms_.emplace(key, std::move(p)).first->second;
  }
  const std::vector<std::size_t>& right_perm(std::size_t i, std::size_t j, std::size_t a) {
    auto key = std::make_tuple(i, j, a, false);
    auto it = perms_.find(key);
    if (it != perms_.end()) return it->second;
    const auto& t = table(i, j);
    FpMatrix ainv = *inverse(table(i, i).homs[a].matrix());
    std::vector<std::size_t> p(t.homs.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = lookup(i, j, t.homs[k].matrix() * ainv);
    return perms_.emplace(key, std::move(p)).first->second;
  }

 private:
  const WaldhausenSpec& spec_;
  const std::vector<Module>& u_;
  std::size_t n_, cap_;
  std::vector<std::unique_ptr<PairTable>> tabs_;
  std::vector<std::vector<std::size_t>> auts_;
  std::vector<bool> aut_done_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, bool>, std::vector<std::size_t>> perms_;
};

struct BudgetStop {};

enum Filter { Any, Cof, We };

struct Shape {
  std::vector<std::size_t> objects;                         ///< universe indices per position
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  ///< (source position, target position)
  std::vector<Filter> filters;
};

const std::vector<std::size_t>& allowed_list(Tables& tb, std::size_t i, std::size_t j, Filter f,
                                             std::vector<std::size_t>& scratch) {
  const auto& t = tb.table(i, j);
  if (f == Cof) return t.cofs;
  if (f == We) return t.wes;
  scratch.resize(t.homs.size());
  for (std::size_t k = 0; k < scratch.size(); ++k) scratch[k] = k;
  return scratch;
}

/// One representative per orbit of automorphisms acting on diagrams of the given shape.
std::vector<std::vector<std::size_t>> orbit_reps(Tables& tb, const Shape& s, std::size_t cap) {
  const std::size_t na = s.arrows.size();
  std::vector<std::size_t> sizes(na);
  std::vector<std::vector<std::size_t>> allowed(na);
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < na; ++a) {
    std::size_t i = s.objects[s.arrows[a].first], j = s.objects[s.arrows[a].second];
    std::vector<std::size_t> scratch;
    allowed[a] = allowed_list(tb, i, j, s.filters[a], scratch);
    sizes[a] = tb.table(i, j).homs.size();
    if (allowed[a].empty()) return {};
    total *= sizes[a];
    if (total > cap) throw BudgetStop{};
  }
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::uint64_t code = 0;
    for (std::size_t a = na; a-- > 0;) code = code * sizes[a] + t[a];
    return code;
  };
  // group generators: each automorphism of each position
  struct Gen {
    std::vector<const std::vector<std::size_t>*> left, right;
  };
  std::vector<Gen> gens;
  for (std::size_t pos = 0; pos < s.objects.size(); ++pos) {
    std::size_t obj = s.objects[pos];
    const auto& auts = tb.auts(obj);
    for (std::size_t a : auts) {
      Gen g;
      g.left.assign(na, nullptr);
      g.right.assign(na, nullptr);
      bool touches = false;
      for (std::size_t k = 0; k < na; ++k) {
        std::size_t i = s.objects[s.arrows[k].first], j = s.objects[s.arrows[k].second];
        if (s.arrows[k].second == pos) g.left[k] = &tb.left_perm(i, j, a), touches = true;
        if (s.arrows[k].first == pos) g.right[k] = &tb.right_perm(i, j, a), touches = true;
      }
      if (touches) gens.push_back(std::move(g));
    }
  }
  std::vector<char> seen(total, 0);
  std::vector<std::vector<std::size_t>> reps;
  std::vector<std::size_t> ctr(na, 0);
  while (true) {
    std::vector<std::size_t> t(na);
    for (std::size_t a = 0; a < na; ++a) t[a] = allowed[a][ctr[a]];
    std::uint64_t code = encode(t);
    if (!seen[code]) {
      reps.push_back(t);
      seen[code] = 1;
      std::vector<std::vector<std::size_t>> stack = {t};
      while (!stack.empty()) {
        auto cur = std::move(stack.back());
        stack.pop_back();
        for (const auto& g : gens) {
          auto nxt = cur;
          for (std::size_t k = 0; k < na; ++k) {
            if (g.left[k]) nxt[k] = (*g.left[k])[nxt[k]];
            if (g.right[k]) nxt[k] = (*g.right[k])[nxt[k]];
          }
          std::uint64_t c2 = encode(nxt);
          if (!seen[c2]) {
            seen[c2] = 1;
            stack.push_back(std::move(nxt));
          }
        }
      }
    }
    std::size_t a = 0;
    while (a < na && ++ctr[a] == allowed[a].size()) ctr[a++] = 0;
    if (a == na) break;
  }
  return reps;
}

std::string name(std::size_t i) { return "U" + std::to_string(i); }

std::string matrix_text(const FpMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ";" : "");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c);
  }
  os << "]";
  return os.str();
}

Diagram diagram(std::vector<std::size_t> objs, std::vector<FpMatrix> maps, const std::string& what) {
  std::ostringstream os;
  os << what << ":";
  for (auto o : objs) os << " " << name(o);
  for (const auto& m : maps) os << " " << matrix_text(m);
  return {std::move(objs), std::move(maps), os.str()};
}

/// Runs `exhaustive`; when it stops on the budget, switches to `sampled` with a fresh report.
template <class E, class S>
CheckReport drive(const std::string& axiom, std::size_t budget, std::uint64_t seed, E exhaustive, S sampled) {
  CheckReport r;
  r.axiom = axiom;
  r.seed = seed;
  try {
    exhaustive(r);
    return r;
  } catch (const BudgetStop&) {
  }
  CheckReport s;
  s.axiom = axiom;
  s.seed = seed;
  s.regime = Regime::Sampled;
  std::mt19937_64 rng(seed);
  sampled(s, rng);
  (void)budget;
  return s;
}

// ---------------------------------------------------------------------------
// Single-diagram evaluators, shared by the sweeps and verify_diagram.

/// Map between pushouts induced by vertical maps; the pushout P has projection [from_y | from_z].
ModuleHom induced_on_pushouts(const Pushout& top, const Pushout& bottom, const ModuleHom& uy, const ModuleHom& uz,
                              const FpMatrix& top_right_inverse) {
  FpMatrix img = FpMatrix::hstack({bottom.from_y.matrix() * uy.matrix(), bottom.from_z.matrix() * uz.matrix()});
  return mk(top.module, bottom.module, img * top_right_inverse);
}

FpMatrix pushout_right_inverse(const Pushout& po) {
  return right_inverse(FpMatrix::hstack({po.from_y.matrix(), po.from_z.matrix()}));
}

bool eval_weq2(const WaldhausenSpec& spec, const ModuleHom& c, const ModuleHom& f, const ModuleHom& c2,
               const ModuleHom& f2, const ModuleHom& ux, const ModuleHom& uy, const ModuleHom& uz) {
  if (!(spec.is_weak_equivalence(ux) && spec.is_weak_equivalence(uy) && spec.is_weak_equivalence(uz))) return true;
  Pushout top = pushout(c, f), bottom = pushout(c2, f2);
  return spec.is_weak_equivalence(induced_on_pushouts(top, bottom, uy, uz, pushout_right_inverse(top)));
}

bool eval_extension(const WaldhausenSpec& spec, const ModuleHom& c, const ModuleHom& c2, const ModuleHom& g) {
  FpMatrix gc = g.matrix() * c.matrix();
  ModuleHom ux = mk(c.source(), c2.source(), left_inverse(c2.matrix()) * gc);
  QuotientModule q = cokernel(c), q2 = cokernel(c2);
  ModuleHom uq = mk(q.module, q2.module, q2.projection.matrix() * g.matrix() * right_inverse(q.projection.matrix()));
  if (!(spec.is_weak_equivalence(ux) && spec.is_weak_equivalence(uq))) return true;
  return spec.is_weak_equivalence(g);
}

/// Map of cylinders T(f) -> T(f') induced by a: X -> X', b: Y -> Y'.
ModuleHom cylinder_map(const ConeFunctor& j, const Cylinder& t, const Cylinder& t2, const ModuleHom& a,
                       const ModuleHom& b) {
  FpMatrix ja = j.map(a).matrix();
  const std::size_t y = b.source().dim(), y2 = b.target().dim();
  FpMatrix m(a.source().p(), t2.t.dim(), t.t.dim());
  m.paste(0, 0, b.matrix());
  if (ja.rows() && ja.cols()) m.paste(y2, y, ja);
  return mk(t.t, t2.t, m);
}

/// Corner map T(f) ⊔_{X⊕Y} (X'⊕Y') -> T(f').
ModuleHom corner_map(const ConeFunctor& j, const ModuleHom& f, const ModuleHom& f2, const ModuleHom& a,
                     const ModuleHom& b) {
  const auto& alg = f.source().algebra();
  Cylinder t = build_cylinder(j, f), t2 = build_cylinder(j, f2);
  DirectSum xy = direct_sum(alg, {f.source(), f.target()}), xy2 = direct_sum(alg, {f2.source(), f2.target()});
  auto jj = [&](const Cylinder& c, const DirectSum& s) {
    return mk(s.module, c.t, c.j1.matrix() * s.projections[0].matrix() + c.j2.matrix() * s.projections[1].matrix());
  };
  ModuleHom ab = block_hom(xy, xy2, {{a, ModuleHom::zero(f.target(), f2.source())},
                                     {ModuleHom::zero(f.source(), f2.target()), b}});
  Pushout po = pushout(jj(t, xy), ab);
  FpMatrix img = FpMatrix::hstack({cylinder_map(j, t, t2, a, b).matrix(), jj(t2, xy2).matrix()});
  return mk(po.module, t2.t, img * pushout_right_inverse(po));
}

bool eval_cyl1_cof(const WaldhausenSpec& spec, const ConeFunctor& j, const ModuleHom& f, const ModuleHom& f2,
                   const ModuleHom& a, const ModuleHom& b) {
  if (!(spec.is_cofibration(a) && spec.is_cofibration(b))) return true;
  return spec.is_cofibration(corner_map(j, f, f2, a, b));
}

bool eval_cyl1_we(const WaldhausenSpec& spec, const ConeFunctor& j, const ModuleHom& f, const ModuleHom& f2,
                  const ModuleHom& a, const ModuleHom& b) {
  if (!(spec.is_weak_equivalence(a) && spec.is_weak_equivalence(b))) return true;
  return spec.is_weak_equivalence(cylinder_map(j, build_cylinder(j, f), build_cylinder(j, f2), a, b));
}

bool eval_cyl2(const ConeFunctor& j, const Module& y) {
  Cylinder c = build_cylinder(j, ModuleHom::zero(zero_module(y.algebra()), y));
  return c.t == y && c.j2.matrix().is_identity() && c.p.matrix().is_identity();
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::size_t(rng() % n); }

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckReport> check_axioms(const WaldhausenSpec& spec, const std::vector<Module>& u, std::size_t budget,
                                      std::uint64_t seed) {
  Tables tb(spec, u, std::max<std::size_t>(budget, 1u << 12));
  const std::size_t n = u.size();
  std::vector<CheckReport> out;
  if (n == 0) return out;
  const Module zero = zero_module(spec.algebra);

  // Cof 1, Weq 1: isomorphisms
  for (bool cof : {true, false}) {
    CheckReport r;
    r.axiom = cof ? "Cof 1" : "Weq 1";
    r.seed = seed;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (u[i].dim() != u[j].dim()) continue;
        const auto& t = tb.table(i, j);
        for (std::size_t k = 0; k < t.homs.size(); ++k) {
          if (!t.homs[k].is_iso()) continue;
          ++r.count;
          if (!(cof ? t.cof[k] : t.we[k]))
            r.fail(diagram({i, j}, {t.homs[k].matrix()}, "isomorphism is not a " +
                                                             std::string(cof ? "cofibration" : "weak equivalence")));
        }
      }
    out.push_back(r);
  }

  {
    CheckReport r;
    r.axiom = "Cof 2";
    r.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
      ++r.count;
      if (!spec.is_cofibration(ModuleHom::zero(zero, u[i]))) r.fail(diagram({i}, {}, "0 -> X is not a cofibration"));
    }
    out.push_back(r);
  }

  auto random_hom = [&](std::mt19937_64& rng, std::size_t i, std::size_t j, Filter f) -> std::optional<std::size_t> {
    const auto& t = tb.table(i, j);
    if (f == Cof) return t.cofs.empty() ? std::nullopt : std::optional<std::size_t>(t.cofs[pick(rng, t.cofs.size())]);
    if (f == We) return t.wes.empty() ? std::nullopt : std::optional<std::size_t>(t.wes[pick(rng, t.wes.size())]);
    return pick(rng, t.homs.size());
  };

  // Cof 3: cobase change of cofibrations
  {
    auto eval = [&](CheckReport& r, std::size_t x, std::size_t y, std::size_t z, std::size_t ic, std::size_t jf) {
      const auto& c = tb.table(x, y).homs[ic];
      const auto& f = tb.table(x, z).homs[jf];
      ++r.count;
      Pushout po = pushout(c, f);
      if (!spec.is_cofibration(po.from_z))
        r.fail(diagram({x, y, z}, {c.matrix(), f.matrix()}, "pushout of a cofibration is not a cofibration"));
    };
    out.push_back(drive(
        "Cof 3", budget, seed,
        [&](CheckReport& r) {
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (std::size_t z = 0; z < n; ++z)
                for (const auto& rep : orbit_reps(tb, {{x, y, z}, {{0, 1}, {0, 2}}, {Cof, Any}}, budget)) {
                  if (r.count >= budget) throw BudgetStop{};
                  eval(r, x, y, z, rep[0], rep[1]);
                }
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          for (std::size_t s = 0; s < budget; ++s) {
            std::size_t x = pick(rng, n), y = pick(rng, n), z = pick(rng, n);
            auto c = random_hom(rng, x, y, Cof);
            if (!c) {
              ++r.count;
              continue;
            }
            eval(r, x, y, z, *c, *random_hom(rng, x, z, Any));
          }
        }));
  }

  // Weq 2: gluing lemma
  {
    struct SpanData {
      std::size_t x, y, z, c, f;
      Pushout po;
      FpMatrix rinv;
    };
    std::vector<SpanData> spans;
    auto collect = [&]() {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            for (const auto& rep : orbit_reps(tb, {{x, y, z}, {{0, 1}, {0, 2}}, {Cof, Any}}, budget)) {
              Pushout po = pushout(tb.table(x, y).homs[rep[0]], tb.table(x, z).homs[rep[1]]);
              FpMatrix rinv = pushout_right_inverse(po);
              spans.push_back({x, y, z, rep[0], rep[1], std::move(po), std::move(rinv)});
            }
    };
    auto has_we = [&](std::size_t i, std::size_t j) { return !tb.table(i, j).wes.empty(); };
    auto eval_solution = [&](CheckReport& r, const SpanData& t, const SpanData& b, std::size_t ix, std::size_t iy,
                             std::size_t iz, std::map<std::pair<std::size_t, std::size_t>, WeTester>& testers,
                             std::size_t ti, std::size_t bi) {
      const auto& tx = tb.table(t.x, b.x);
      const auto& ty = tb.table(t.y, b.y);
      const auto& tz = tb.table(t.z, b.z);
      ++r.count;
      if (!(tx.we[ix] && ty.we[iy] && tz.we[iz])) return;
      ModuleHom up = induced_on_pushouts(t.po, b.po, ty.homs[iy], tz.homs[iz], t.rinv);
      auto it = testers.find({ti, bi});
      if (it == testers.end()) it = testers.emplace(std::make_pair(ti, bi), WeTester(spec, t.po.module, b.po.module)).first;
      if (!it->second(up)) {
        r.fail(diagram({t.x, t.y, t.z, b.x, b.y, b.z},
                       {tb.table(t.x, t.y).homs[t.c].matrix(), tb.table(t.x, t.z).homs[t.f].matrix(),
                        tb.table(b.x, b.y).homs[b.c].matrix(), tb.table(b.x, b.z).homs[b.f].matrix(),
                        tx.homs[ix].matrix(), ty.homs[iy].matrix(), tz.homs[iz].matrix()},
                       "induced map of pushouts is not a weak equivalence"));
      }
    };
    /// Vertical triples making both squares commute, as a basis of coefficient vectors (x | y | z).
    auto vertical_space = [&](const SpanData& t, const SpanData& b) {
      const auto& bx = tb.table(t.x, b.x).basis;
      const auto& by = tb.table(t.y, b.y).basis;
      const auto& bz = tb.table(t.z, b.z).basis;
      const FpMatrix& c = tb.table(t.x, t.y).homs[t.c].matrix();
      const FpMatrix& f = tb.table(t.x, t.z).homs[t.f].matrix();
      const FpMatrix& c2 = tb.table(b.x, b.y).homs[b.c].matrix();
      const FpMatrix& f2 = tb.table(b.x, b.z).homs[b.f].matrix();
      const Scalar p = spec.algebra->p();
      const std::size_t r1 = u[b.y].dim() * u[t.x].dim(), r2 = u[b.z].dim() * u[t.x].dim();
      const std::size_t cols = bx.size() + by.size() + bz.size();
      FpMatrix a(p, r1 + r2, cols);
      auto put = [&](std::size_t col, std::size_t off, const FpMatrix& m, bool negate) {
        const auto& d = m.data();
        for (std::size_t k = 0; k < d.size(); ++k) a.set(off + k, col, negate ? neg_mod(d[k], p) : d[k]);
      };
      for (std::size_t k = 0; k < bx.size(); ++k) {
        put(k, 0, c2 * bx[k].matrix(), true);
        put(k, r1, f2 * bx[k].matrix(), true);
      }
      for (std::size_t k = 0; k < by.size(); ++k) put(bx.size() + k, 0, by[k].matrix() * c, false);
      for (std::size_t k = 0; k < bz.size(); ++k) put(bx.size() + by.size() + k, r1, bz[k].matrix() * f, false);
      if (cols == 0) return std::vector<Vec>{};
      if (r1 + r2 == 0) {
        std::vector<Vec> all;
        for (std::size_t k = 0; k < cols; ++k) {
          Vec e(cols, 0);
          e[k] = 1;
          all.push_back(e);
        }
        return all;
      }
      return nullspace_basis(a);
    };
    auto split = [&](const SpanData& t, const SpanData& b, const Vec& v) {
      std::size_t dx = tb.table(t.x, b.x).basis.size(), dy = tb.table(t.y, b.y).basis.size();
      Vec cx(v.begin(), v.begin() + dx), cy(v.begin() + dx, v.begin() + dx + dy), cz(v.begin() + dx + dy, v.end());
      return std::make_tuple(tb.from_coeffs(t.x, b.x, cx), tb.from_coeffs(t.y, b.y, cy), tb.from_coeffs(t.z, b.z, cz));
    };
    out.push_back(drive(
        "Weq 2", budget, seed,
        [&](CheckReport& r) {
          collect();
          std::map<std::pair<std::size_t, std::size_t>, WeTester> testers;
          for (std::size_t ti = 0; ti < spans.size(); ++ti)
            for (std::size_t bi = 0; bi < spans.size(); ++bi) {
              const auto& t = spans[ti];
              const auto& b = spans[bi];
              if (!has_we(t.x, b.x) || !has_we(t.y, b.y) || !has_we(t.z, b.z)) continue;
              auto basis = vertical_space(t, b);
              CoefficientCounter cc(spec.algebra->p(), basis.size());
              const std::size_t len = tb.table(t.x, b.x).basis.size() + tb.table(t.y, b.y).basis.size() +
                                      tb.table(t.z, b.z).basis.size();
              do {
                if (r.count >= budget) throw BudgetStop{};
                Vec v = linear_combination(spec.algebra->p(), basis, cc.value(), len);
                auto [ix, iy, iz] = split(t, b, v);
                eval_solution(r, t, b, ix, iy, iz, testers, ti, bi);
              } while (cc.next());
            }
          r.notes.push_back(std::to_string(spans.size()) + " span orbits");
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          if (spans.empty()) collect();
          std::map<std::pair<std::size_t, std::size_t>, WeTester> testers;
          std::size_t nontrivial = 0;
          for (std::size_t s = 0; s < budget && !spans.empty(); ++s) {
            std::size_t ti = pick(rng, spans.size()), bi = pick(rng, spans.size());
            const auto& t = spans[ti];
            const auto& b = spans[bi];
            auto basis = vertical_space(t, b);
            const std::size_t len = tb.table(t.x, b.x).basis.size() + tb.table(t.y, b.y).basis.size() +
                                    tb.table(t.z, b.z).basis.size();
            Vec coeffs(basis.size());
            for (auto& cf : coeffs) cf = Scalar(rng() % spec.algebra->p());
            auto [ix, iy, iz] = split(t, b, linear_combination(spec.algebra->p(), basis, coeffs, len));
            std::size_t before = r.count;
            eval_solution(r, t, b, ix, iy, iz, testers, ti, bi);
            if (tb.table(t.x, b.x).we[ix] && tb.table(t.y, b.y).we[iy] && tb.table(t.z, b.z).we[iz]) ++nontrivial;
            (void)before;
          }
          r.notes.push_back(std::to_string(nontrivial) + " samples with weak-equivalence verticals");
        }));
  }

  // composition closure and saturation over composable pairs
  for (int kind = 0; kind < 3; ++kind) {
    const std::string axiom = kind == 0 ? "cof composition" : kind == 1 ? "we composition" : "saturation";
    Filter filt = kind == 0 ? Cof : kind == 1 ? We : Any;
    auto eval = [&](CheckReport& r, std::size_t x, std::size_t y, std::size_t z, std::size_t i1, std::size_t i2) {
      const auto& t1 = tb.table(x, y);
      const auto& t2 = tb.table(y, z);
      ++r.count;
      std::size_t i3 = tb.lookup(x, z, t2.homs[i2].matrix() * t1.homs[i1].matrix());
      const auto& t3 = tb.table(x, z);
      bool bad = false;
      std::string what;
      if (kind == 0) {
        bad = t1.cof[i1] && t2.cof[i2] && !t3.cof[i3];
        what = "composite of cofibrations is not a cofibration";
      } else if (kind == 1) {
        bad = t1.we[i1] && t2.we[i2] && !t3.we[i3];
        what = "composite of weak equivalences is not a weak equivalence";
      } else {
        int w = int(t1.we[i1]) + int(t2.we[i2]) + int(t3.we[i3]);
        bad = w == 2;
        what = "two of f, g, gf are weak equivalences but not the third";
      }
      if (bad) r.fail(diagram({x, y, z}, {t1.homs[i1].matrix(), t2.homs[i2].matrix()}, what));
    };
    out.push_back(drive(
        axiom, budget, seed,
        [&](CheckReport& r) {
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (std::size_t z = 0; z < n; ++z)
                for (const auto& rep : orbit_reps(tb, {{x, y, z}, {{0, 1}, {1, 2}}, {filt, filt}}, budget)) {
                  if (r.count >= budget) throw BudgetStop{};
                  eval(r, x, y, z, rep[0], rep[1]);
                }
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          for (std::size_t s = 0; s < budget; ++s) {
            std::size_t x = pick(rng, n), y = pick(rng, n), z = pick(rng, n);
            auto a = random_hom(rng, x, y, filt), b = random_hom(rng, y, z, filt);
            if (!a || !b) {
              ++r.count;
              continue;
            }
            eval(r, x, y, z, *a, *b);
          }
        }));
  }

  // extension axiom
  {
    auto eval_all = [&](CheckReport& r, std::size_t x, std::size_t y, std::size_t ic, std::size_t x2, std::size_t y2,
                        std::size_t ic2, std::mt19937_64* rng) {
      const ModuleHom& c = tb.table(x, y).homs[ic];
      const ModuleHom& c2 = tb.table(x2, y2).homs[ic2];
      QuotientModule q = cokernel(c), q2 = cokernel(c2);
      const auto& ty = tb.table(y, y2);
      const Scalar p = spec.algebra->p();
      // g with q2 g c = 0
      std::vector<Vec> cols;
      for (const auto& bg : ty.basis) cols.push_back((q2.projection.matrix() * bg.matrix() * c.matrix()).data());
      const std::size_t rows = q2.module.dim() * u[x].dim();
      std::vector<Vec> basis;
      if (ty.basis.empty()) {
      } else if (rows == 0) {
        for (std::size_t k = 0; k < ty.basis.size(); ++k) {
          Vec e(ty.basis.size(), 0);
          e[k] = 1;
          basis.push_back(e);
        }
      } else {
        basis = nullspace_basis(FpMatrix::from_columns(p, cols, rows));
      }
      FpMatrix linv = left_inverse(c2.matrix()), rinv = right_inverse(q.projection.matrix());
      WeTester weq(spec, q.module, q2.module);
      auto one = [&](const Vec& coeffs) {
        if (!rng && r.count >= budget) throw BudgetStop{};
        ++r.count;
        Vec v = linear_combination(p, basis, coeffs, ty.basis.size());
        std::size_t ig = tb.from_coeffs(y, y2, v);
        const ModuleHom& g = ty.homs[ig];
        std::size_t ix = tb.lookup(x, x2, linv * g.matrix() * c.matrix());
        if (!tb.table(x, x2).we[ix]) return;
        ModuleHom uq = mk(q.module, q2.module, q2.projection.matrix() * g.matrix() * rinv);
        if (!weq(uq)) return;
        if (!ty.we[ig])
          r.fail(diagram({x, y, x2, y2}, {c.matrix(), c2.matrix(), g.matrix()},
                         "map of cofiber sequences with equivalent ends is not a weak equivalence"));
      };
      if (rng) {
        Vec coeffs(basis.size());
        for (auto& cf : coeffs) cf = Scalar((*rng)() % p);
        one(coeffs);
        return;
      }
      CoefficientCounter cc(p, basis.size());
      do one(cc.value());
      while (cc.next());
    };
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> arrows;
    auto collect = [&]() {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (const auto& rep : orbit_reps(tb, {{x, y}, {{0, 1}}, {Cof}}, budget)) arrows.emplace_back(x, y, rep[0]);
    };
    out.push_back(drive(
        "extension", budget, seed,
        [&](CheckReport& r) {
          collect();
          for (const auto& [x, y, ic] : arrows)
            for (const auto& [x2, y2, ic2] : arrows) {
              if (tb.table(x, x2).wes.empty()) continue;
              eval_all(r, x, y, ic, x2, y2, ic2, nullptr);
            }
          r.notes.push_back(std::to_string(arrows.size()) + " cofibration orbits");
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          if (arrows.empty()) collect();
          for (std::size_t s = 0; s < budget && !arrows.empty(); ++s) {
            const auto& [x, y, ic] = arrows[pick(rng, arrows.size())];
            const auto& [x2, y2, ic2] = arrows[pick(rng, arrows.size())];
            eval_all(r, x, y, ic, x2, y2, ic2, &rng);
          }
        }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cone and cylinder functors.

bool check_quasi_frobenius(const AlgebraPtr& alg) {
  (void)simples(alg, true);
  return is_injective(regular_module(alg)) && is_projective(coregular(alg));
}

namespace {

std::vector<Vec> hom_vectors(const std::vector<ModuleHom>& hs) {
  std::vector<Vec> out;
  for (const auto& h : hs) out.push_back(h.matrix().data());
  return out;
}

}  // namespace

ConeFunctor build_cone_functor_absolute(const AlgebraPtr& alg) {
  if (!check_quasi_frobenius(alg)) throw NotQuasiFrobenius("algebra is not quasi-Frobenius; no absolute cone functor");
  Module u = coregular(alg);
  ConeFunctor j;
  j.provenance = "absolute: evaluation into powers of the coregular module";
  j.object = [alg, u](const Module& x) {
    auto basis = hom_space(x, u);
    if (basis.empty()) {
      Module z = zero_module(alg);
      return ConeObject{z, ModuleHom::zero(x, z)};
    }
    Module jx = direct_sum(alg, std::vector<Module>(basis.size(), u)).module;
    std::vector<FpMatrix> rows;
    for (const auto& b : basis) rows.push_back(b.matrix());
    return ConeObject{jx, ModuleHom::trusted(x, jx, FpMatrix::vstack(rows))};
  };
  j.map = [alg, u](const ModuleHom& a) {
    auto bs = hom_space(a.source(), u), bt = hom_space(a.target(), u);
    const Scalar p = alg->p();
    const std::size_t du = u.dim();
    Module js = bs.empty() ? zero_module(alg) : direct_sum(alg, std::vector<Module>(bs.size(), u)).module;
    Module jt = bt.empty() ? zero_module(alg) : direct_sum(alg, std::vector<Module>(bt.size(), u)).module;
    FpMatrix m(p, jt.dim(), js.dim());
    if (!bs.empty() && !bt.empty()) {
      FpMatrix cols = FpMatrix::from_columns(p, hom_vectors(bs), a.source().dim() * du);
      for (std::size_t jj = 0; jj < bt.size(); ++jj) {
        FpMatrix rhs = FpMatrix::from_columns(p, {(bt[jj].matrix() * a.matrix()).data()}, a.source().dim() * du);
        auto sol = solve(cols, rhs);
        if (!sol) throw Error("composite is not in the hom space");
        for (std::size_t i = 0; i < bs.size(); ++i) {
          Scalar cji = sol->particular.at(i, 0);
          for (std::size_t d = 0; d < du; ++d) m.set(jj * du + d, i * du + d, cji);
        }
      }
    }
    return ModuleHom::trusted(js, jt, m);
  };
  return j;
}

Cylinder build_cylinder(const ConeFunctor& j, const ModuleHom& f) {
  const auto& alg = f.source().algebra();
  ConeObject cx = j.object(f.source());
  DirectSum t = direct_sum(alg, {f.target(), cx.module});
  Cylinder c;
  c.t = t.module;
  c.j1 = ModuleHom::trusted(f.source(), c.t,
                            t.injections[0].matrix() * f.matrix() + t.injections[1].matrix() * cx.eta.matrix());
  c.j2 = t.injections[0];
  c.p = t.projections[0];
  return c;
}

std::vector<CheckReport> check_cylinder_axioms(const WaldhausenSpec& spec, const ConeFunctor& j,
                                               const std::vector<Module>& u, std::size_t budget, std::uint64_t seed) {
  Tables tb(spec, u, 1u << 16);
  const std::size_t n = u.size();
  std::vector<CheckReport> out;

  {
    CheckReport r;
    r.axiom = "Cyl 2";
    r.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
      ++r.count;
      if (!eval_cyl2(j, u[i])) r.fail(diagram({i}, {}, "T(0 -> Y) is not Y with identity structure maps"));
    }
    out.push_back(r);
  }

  {
    auto eval = [&](CheckReport& r, std::size_t x, std::size_t y, std::size_t k) {
      const ModuleHom& f = tb.table(x, y).homs[k];
      ++r.count;
      if (!spec.is_weak_equivalence(build_cylinder(j, f).p))
        r.fail(diagram({x, y}, {f.matrix()}, "cylinder projection is not a weak equivalence"));
    };
    out.push_back(drive(
        "cylinder axiom", budget, seed,
        [&](CheckReport& r) {
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (const auto& rep : orbit_reps(tb, {{x, y}, {{0, 1}}, {Any}}, budget)) {
                if (r.count >= budget) throw BudgetStop{};
                eval(r, x, y, rep[0]);
              }
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          for (std::size_t s = 0; s < budget; ++s) {
            std::size_t x = pick(rng, n), y = pick(rng, n);
            eval(r, x, y, pick(rng, tb.table(x, y).homs.size()));
          }
        }));
  }

  for (bool cof : {true, false}) {
    const std::string axiom = cof ? "Cyl 1 cofibrations" : "Cyl 1 weak equivalences";
    const Scalar p = spec.algebra->p();
    // f' with f' a = b f, as particular solution plus kernel basis over the hom basis of (x2, y2)
    auto solutions = [&](std::size_t x, std::size_t x2, std::size_t y2, const ModuleHom& f,
                         const ModuleHom& a, const ModuleHom& b) -> std::optional<std::pair<Vec, std::vector<Vec>>> {
      const auto& bas = tb.table(x2, y2).basis;
      const std::size_t rows = u[y2].dim() * u[x].dim();
      Vec rhs = (b.matrix() * f.matrix()).data();
      if (bas.empty()) {
        for (Scalar v : rhs)
          if (v) return std::nullopt;
        return std::make_pair(Vec{}, std::vector<Vec>{});
      }
      if (rows == 0) {
        std::vector<Vec> all;
        for (std::size_t k = 0; k < bas.size(); ++k) {
          Vec e(bas.size(), 0);
          e[k] = 1;
          all.push_back(e);
        }
        return std::make_pair(Vec(bas.size(), 0), all);
      }
      std::vector<Vec> cols;
      for (const auto& bb : bas) cols.push_back((bb.matrix() * a.matrix()).data());
      auto sol = solve(FpMatrix::from_columns(p, cols, rows), FpMatrix::from_columns(p, {rhs}, rows));
      if (!sol) return std::nullopt;
      return std::make_pair(sol->particular.column(0), sol->nullspace);
    };
    auto eval = [&](CheckReport& r, std::size_t x, std::size_t y, std::size_t x2, std::size_t y2, const ModuleHom& f,
                    const ModuleHom& f2, const ModuleHom& a, const ModuleHom& b) {
      ++r.count;
      bool ok = cof ? eval_cyl1_cof(spec, j, f, f2, a, b) : eval_cyl1_we(spec, j, f, f2, a, b);
      if (!ok)
        r.fail(diagram({x, y, x2, y2}, {f.matrix(), f2.matrix(), a.matrix(), b.matrix()},
                       cof ? "corner map of the cylinder is not a cofibration"
                           : "map of cylinders is not a weak equivalence"));
    };
    out.push_back(drive(
        axiom, budget, seed,
        [&](CheckReport& r) {
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (const auto& rep : orbit_reps(tb, {{x, y}, {{0, 1}}, {Any}}, budget)) {
                const ModuleHom& f = tb.table(x, y).homs[rep[0]];
                for (std::size_t x2 = 0; x2 < n; ++x2)
                  for (std::size_t y2 = 0; y2 < n; ++y2) {
                    const auto& ta = tb.table(x, x2);
                    const auto& tbb = tb.table(y, y2);
                    for (std::size_t ia : cof ? ta.cofs : ta.wes)
                      for (std::size_t ib : cof ? tbb.cofs : tbb.wes) {
                        auto sol = solutions(x, x2, y2, f, ta.homs[ia], tbb.homs[ib]);
                        if (!sol) continue;
                        const auto& bas = tb.table(x2, y2).basis;
                        CoefficientCounter cc(p, sol->second.size());
                        do {
                          if (r.count >= budget) throw BudgetStop{};
                          Vec v = linear_combination(p, sol->second, cc.value(), bas.size());
                          for (std::size_t k = 0; k < v.size(); ++k) v[k] = add_mod(v[k], sol->first[k], p);
                          ModuleHom f2 = bas.empty() ? ModuleHom::zero(u[x2], u[y2]) : combine(bas, v, u[x2], u[y2]);
                          eval(r, x, y, x2, y2, f, f2, ta.homs[ia], tbb.homs[ib]);
                        } while (cc.next());
                      }
                  }
              }
        },
        [&](CheckReport& r, std::mt19937_64& rng) {
          for (std::size_t s = 0; s < budget; ++s) {
            std::size_t x = pick(rng, n), y = pick(rng, n), x2 = pick(rng, n), y2 = pick(rng, n);
            const auto& ta = tb.table(x, x2);
            const auto& tbb = tb.table(y, y2);
            const auto& la = cof ? ta.cofs : ta.wes;
            const auto& lb = cof ? tbb.cofs : tbb.wes;
            const ModuleHom& f = tb.table(x, y).homs[pick(rng, tb.table(x, y).homs.size())];
            if (la.empty() || lb.empty()) {
              ++r.count;
              continue;
            }
            const ModuleHom& a = ta.homs[la[pick(rng, la.size())]];
            const ModuleHom& b = tbb.homs[lb[pick(rng, lb.size())]];
            auto sol = solutions(x, x2, y2, f, a, b);
            if (!sol) {
              ++r.count;
              continue;
            }
            const auto& bas = tb.table(x2, y2).basis;
            Vec coeffs(sol->second.size());
            for (auto& cf : coeffs) cf = Scalar(rng() % p);
            Vec v = linear_combination(p, sol->second, coeffs, bas.size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = add_mod(v[k], sol->first[k], p);
            ModuleHom f2 = bas.empty() ? ModuleHom::zero(u[x2], u[y2]) : combine(bas, v, u[x2], u[y2]);
            eval(r, x, y, x2, y2, f, f2, a, b);
          }
        }));
  }
  for (auto& r : out) r.notes.push_back("cone: " + j.provenance);
  return out;
}

// ---------------------------------------------------------------------------

bool verify_diagram(const WaldhausenSpec& spec, const std::vector<Module>& u, const std::string& axiom,
                    const Diagram& d, const ConeFunctor* cone) {
  for (auto o : d.objects)
    if (o >= u.size()) throw InputError("witness refers to a module outside the universe");
  auto obj = [&](std::size_t k) { return u.at(d.objects.at(k)); };
  auto map = [&](std::size_t k, std::size_t s, std::size_t t) { return ModuleHom::create(obj(s), obj(t), d.maps.at(k)); };
  auto need_cone = [&]() -> const ConeFunctor& {
    if (!cone) throw InputError("axiom " + axiom + " needs a cone functor");
    return *cone;
  };
  if (axiom == "Cof 1") return spec.is_cofibration(map(0, 0, 1));
  if (axiom == "Weq 1") return spec.is_weak_equivalence(map(0, 0, 1));
  if (axiom == "Cof 2") return spec.is_cofibration(ModuleHom::zero(zero_module(spec.algebra), obj(0)));
  if (axiom == "Cof 3") {
    ModuleHom c = map(0, 0, 1);
    return !spec.is_cofibration(c) || spec.is_cofibration(pushout(c, map(1, 0, 2)).from_z);
  }
  if (axiom == "Weq 2") {
    ModuleHom c = map(0, 0, 1), f = map(1, 0, 2), c2 = map(2, 3, 4), f2 = map(3, 3, 5);
    ModuleHom ux = map(4, 0, 3), uy = map(5, 1, 4), uz = map(6, 2, 5);
    if (!(uy.matrix() * c.matrix() == c2.matrix() * ux.matrix()) || !(uz.matrix() * f.matrix() == f2.matrix() * ux.matrix()))
      throw InputError("witness squares do not commute");
    if (!spec.is_cofibration(c) || !spec.is_cofibration(c2)) return true;
    return eval_weq2(spec, c, f, c2, f2, ux, uy, uz);
  }
  if (axiom == "cof composition" || axiom == "we composition" || axiom == "saturation") {
    ModuleHom f = map(0, 0, 1), g = map(1, 1, 2), gf = g.after(f);
    if (axiom == "cof composition")
      return !(spec.is_cofibration(f) && spec.is_cofibration(g)) || spec.is_cofibration(gf);
    bool wf = spec.is_weak_equivalence(f), wg = spec.is_weak_equivalence(g), wgf = spec.is_weak_equivalence(gf);
    if (axiom == "we composition") return !(wf && wg) || wgf;
    return int(wf) + int(wg) + int(wgf) != 2;
  }
  if (axiom == "extension") {
    ModuleHom c = map(0, 0, 1), c2 = map(1, 2, 3), g = map(2, 1, 3);
    if (!spec.is_cofibration(c) || !spec.is_cofibration(c2)) return true;
    return eval_extension(spec, c, c2, g);
  }
  if (axiom == "Cyl 2") return eval_cyl2(need_cone(), obj(0));
  if (axiom == "cylinder axiom") return spec.is_weak_equivalence(build_cylinder(need_cone(), map(0, 0, 1)).p);
  if (axiom == "Cyl 1 cofibrations" || axiom == "Cyl 1 weak equivalences") {
    ModuleHom f = map(0, 0, 1), f2 = map(1, 2, 3), a = map(2, 0, 2), b = map(3, 1, 3);
    if (!(f2.matrix() * a.matrix() == b.matrix() * f.matrix())) throw InputError("witness square does not commute");
    return axiom == "Cyl 1 cofibrations" ? eval_cyl1_cof(spec, need_cone(), f, f2, a, b)
                                         : eval_cyl1_we(spec, need_cone(), f, f2, a, b);
  }
  throw InputError("unknown axiom: " + axiom);
}

// ---------------------------------------------------------------------------
// Frobenius-type conditions.

std::optional<ModuleHom> embed_in_projectives(const Module& m) {
  const auto& alg = m.algebra();
  if (m.dim() == 0) return ModuleHom::zero(m, zero_module(alg));
  const auto& pd = projective_data(alg);
  Subspace soc = socle_subspace(m);
  FpMatrix sb = FpMatrix::from_columns(m.p(), soc.basis(), m.dim());
  std::vector<FpMatrix> rows;
  std::vector<Module> parts;
  auto remaining = [&](const std::vector<FpMatrix>& rs) {
    if (rs.empty()) return soc.dim();
    return soc.dim() - rank(FpMatrix::vstack(rs) * sb);
  };
  std::size_t left = soc.dim();
  // each step kills part of the socle kernel; a vector no hom detects means no embedding exists
  while (left > 0) {
    bool grew = false;
    for (std::size_t j = 0; j < pd.projectives.size() && !grew; ++j)
      for (const auto& h : hom_space(m, pd.projectives[j])) {
        auto trial = rows;
        trial.push_back(h.matrix());
        std::size_t k = remaining(trial);
        if (k < left) {
          rows = std::move(trial);
          parts.push_back(pd.projectives[j]);
          left = k;
          grew = true;
          break;
        }
      }
    if (!grew) return std::nullopt;
  }
  Module target = direct_sum(alg, parts).module;
  return ModuleHom::trusted(m, target, FpMatrix::vstack(rows));
}

CheckReport check_cone_frobenius(const AlgebraPtr& alg, const std::vector<Module>& u) {
  CheckReport r;
  r.axiom = "cone-Frobenius";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!same_algebra(u[i].algebra(), alg)) throw AlgebraMismatch("universe module over another algebra");
    ++r.count;
    auto e = embed_in_projectives(u[i]);
    if (!e) {
      r.fail({{i}, {}, name(i) + " (dim " + std::to_string(u[i].dim()) + ") has no mono into a sum of projectives"});
      continue;
    }
    r.notes.push_back(name(i) + " embeds in a projective of dim " + std::to_string(e->target().dim()));
  }
  return r;
}

std::optional<RelativeCone> find_relative_cone(const Module& x, const AlgebraMorphism& phi,
                                               const std::vector<Module>& candidates, std::size_t cap) {
  if (!same_algebra(x.algebra(), phi.source())) throw AlgebraMismatch("module is not over the source of the morphism");
  if (is_projective(base_change(x, phi).module)) return RelativeCone{x, ModuleHom::identity(x)};
  for (const auto& y : candidates) {
    if (!is_projective(base_change(y, phi).module)) continue;
    if (hom_dim(x, y) == 0) continue;
    for (const auto& u : all_homs(x, y, cap))
      if (base_change_hom(u, phi).is_injective()) return RelativeCone{y, u};
  }
  return std::nullopt;
}

CheckReport check_relative_qf(const AlgebraMorphism& phi, const std::vector<Module>& u) {
  CheckReport r;
  r.axiom = "relative quasi-Frobenius (pointwise)";
  r.notes.push_back("slot order: the mono stays a mono after base change, the target becomes projective after base change");
  r.notes.push_back("pointwise witnesses only; functoriality is not certified");
  for (std::size_t i = 0; i < u.size(); ++i) {
    ++r.count;
    auto c = find_relative_cone(u[i], phi, u);
    if (!c) {
      r.fail({{i}, {}, name(i) + " has no relative cone in the universe"});
      continue;
    }
    std::string target = "outside the universe";
    for (std::size_t k = 0; k < u.size(); ++k)
      if (u[k] == c->y) target = name(k);
    r.notes.push_back(name(i) + " -> " + target);
  }
  return r;
}

}  // namespace stabg
