// One line per acceptance criterion; exit status is nonzero when any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "stabg/commands.hpp"
#include "stabg/decomp.hpp"
#include "stabg/errors.hpp"

using namespace stabg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<long long> torsion_ll(const AbelianGroup& g) {
  std::vector<long long> out;
  for (const auto& t : g.torsion) out.push_back(t.convert_to<long long>());
  return out;
}

std::vector<Module> with_zero(const AlgebraPtr& a, std::vector<Module> ms) {
  ms.insert(ms.begin(), zero_module(a));
  return ms;
}

AlgebraMorphism phi_example() {
  return quotient_by_ideal(ideal_generated(trunc_poly(2, 4), {trunc_poly(2, 4)->parse_element("x^2")})).projection;
}

// 1
Outcome unit_groups() {
  Outcome o;
  auto t2 = trunc_poly(2, 2), t4 = trunc_poly(2, 4);
  o.require(unit_group(t2).structure.to_string() == "Z/2", "units of F2[x]/x^2");
  auto u4 = unit_group(t4);
  o.require(u4.order == 8 && torsion_ll(u4.structure) == std::vector<long long>{2, 4}, "units of F2[x]/x^4");
  o.require(is_unit_basis(t4, {t4->parse_element("1+x"), t4->parse_element("1+x^2+x^3")}, {4, 2}),
            "1+x, 1+x^2+x^3 rejected");
  o.detail = "Z/2; " + u4.structure.to_string() + " generated by 1+x, 1+x^2+x^3";
  return o;
}

// 2
Outcome cartan_map() {
  Outcome o;
  auto t2 = trunc_poly(2, 2);
  auto k = k0(t2), g = g0(t2);
  auto f = k0_to_g0(t2);
  o.require(k.group.to_string() == "Z" && g.group.to_string() == "Z", "K0 or G0 is not Z");
  o.require(f.matrix.rows() == 1 && f.matrix.cols() == 1 && f.matrix.at(0, 0) == 2, "map is not 2");
  if (o.ok) o.detail = "Z -> Z, multiplication by 2";
  return o;
}

// 3
Outcome census() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto a = trunc_poly(2, n);
    auto mods = enumerate_indecomposables(a, n + 1).modules;
    std::vector<std::size_t> dims;
    for (const auto& m : mods) dims.push_back(m.dim());
    std::vector<std::size_t> want;
    for (std::size_t i = 1; i <= n; ++i) want.push_back(i);
    o.require(dims == want, "census for n = " + std::to_string(n));
    d << (n > 1 ? " " : "") << mods.size();
  }
  if (o.ok) o.detail = "counts " + d.str();
  return o;
}

// 4
Outcome stable_g_theory() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n : {2u, 4u}) {
    auto a = trunc_poly(2, n);
    auto g = gst0(a, n);
    o.require(g.group.to_string() == "Z/" + std::to_string(n), "gst0 of F2[x]/x^" + std::to_string(n));
    // oracle: relations from submodules of sums of at most two indecomposables
    auto inds = enumerate_indecomposables(a, n).modules;
    std::vector<Module> mods = inds;
    for (std::size_t i = 0; i < inds.size(); ++i)
      for (std::size_t j = i; j < inds.size(); ++j)
        if (inds[i].dim() + inds[j].dim() <= n) mods.push_back(direct_sum(a, {inds[i], inds[j]}).module);
    auto cls = [&](const Module& m) {
      std::vector<long long> v(g.size(), 0);
      if (m.dim() == 0) return v;
      for (const auto& part : krull_schmidt(m).parts) {
        if (is_projective(part)) continue;
        bool found = false;
        for (std::size_t i = 0; i < g.generators.size(); ++i)
          if (is_isomorphic(part, g.generators[i])) {
            ++v[i];
            found = true;
          }
        o.require(found, "oracle met a summand outside the generators");
      }
      return v;
    };
    std::vector<std::vector<long long>> rels;
    for (const auto& m : mods)
      for (const auto& [s, q] : oracle::sub_quotient_pairs(m)) {
        auto cs = cls(s), cm = cls(m), cq = cls(q);
        std::vector<long long> r(g.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = cs[k] - cm[k] + cq[k];
        rels.push_back(r);
      }
    auto og = oracle::quotient_group(rels, g.size());
    o.require(og && *og == std::vector<long long>{static_cast<long long>(n)}, "oracle disagrees at n = " + std::to_string(n));
    d << (n > 2 ? ", " : "") << g.group.to_string() << " (" << rels.size() << " oracle relations)";
  }
  if (o.ok) o.detail = d.str();
  return o;
}

// 5
Outcome qf_verdicts() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) o.require(check_quasi_frobenius(trunc_poly(2, n)), "trunc " + std::to_string(n));
  o.require(check_quasi_frobenius(exterior(2, 2)), "exterior");
  o.require(!check_quasi_frobenius(square_zero(2, 2)), "square_zero");
  for (auto a : {trunc_poly(2, 1), trunc_poly(2, 2), trunc_poly(2, 3), trunc_poly(2, 4), exterior(2, 2),
                 square_zero(2, 2)}) {
    auto u = with_zero(a, enumerate_indecomposables(a, 4).modules);
    o.require(check_cone_frobenius(a, u).passed == check_quasi_frobenius(a), "cone-Frobenius disagrees on " + a->name());
  }
  if (o.ok) o.detail = "QF on trunc 1-4 and exterior, not on square_zero; cone search agrees";
  return o;
}

bool all_exhaustive_pass(const std::vector<CheckReport>& rs, std::string& why) {
  for (const auto& r : rs) {
    if (!r.passed) {
      why = r.axiom + " failed";
      return false;
    }
    if (r.regime != Regime::Exhaustive) {
      why = r.axiom + " was sampled";
      return false;
    }
  }
  return true;
}

/// Indecomposables up to dim 4; for the exterior algebra (infinitely many) up to dim 3 plus the regular module.
std::vector<Module> qf_universe(const AlgebraPtr& a) {
  if (a->name().rfind("ext", 0) == 0) {
    auto u = with_zero(a, enumerate_indecomposables(a, 3).modules);
    u.push_back(regular_module(a));
    return u;
  }
  return with_zero(a, enumerate_indecomposables(a, 4).modules);
}

std::vector<AlgebraPtr> qf_presets() {
  return {trunc_poly(2, 1), trunc_poly(2, 2), trunc_poly(2, 3), trunc_poly(2, 4), exterior(2, 2)};
}

// 6
Outcome axiom_suite() {
  Outcome o;
  std::string why;
  std::uint64_t diagrams = 0;
  for (auto a : qf_presets()) {
    auto spec = WaldhausenSpec::create(AllowableClass::all(a), AllowableClass::all(a));
    auto rs = check_axioms(spec, qf_universe(a), 100000, 0);
    for (const auto& r : rs) diagrams += r.count;
    o.require(all_exhaustive_pass(rs, why), a->name() + ": " + why);
  }
  auto phi = phi_example();
  auto b = phi.source();
  auto u = with_zero(b, enumerate_indecomposables(b, 4).modules);
  auto spec = WaldhausenSpec::create(AllowableClass::pullback(phi, AllowableClass::all(phi.target())).with_universe(u),
                                     AllowableClass::pushforward(phi, AllowableClass::all(phi.target())));
  auto rs = check_axioms(spec, u, 100000, 0);
  for (const auto& r : rs) diagrams += r.count;
  o.require(all_exhaustive_pass(rs, why), "pullback/pushforward: " + why);
  if (o.ok) o.detail = "9 axioms x 6 structures, exhaustive, " + std::to_string(diagrams) + " diagrams";
  return o;
}

// 7
Outcome cylinder_suite() {
  Outcome o;
  for (auto a : qf_presets()) {
    auto spec = WaldhausenSpec::create(AllowableClass::all(a), AllowableClass::all(a));
    auto j = build_cone_functor_absolute(a);
    auto rs = check_cylinder_axioms(spec, j, qf_universe(a), 2000, 0);
    o.require(rs.size() == 4, "cylinder report count");
    for (const auto& r : rs) o.require(r.passed, a->name() + ": " + r.axiom);
  }
  bool refused = false;
  try {
    build_cone_functor_absolute(square_zero(2, 2));
  } catch (const NotQuasiFrobenius&) {
    refused = true;
  }
  o.require(refused, "cone functor built over square_zero");
  if (o.ok) o.detail = "Cyl 1, Cyl 2, cylinder axiom on 5 presets; square_zero refused";
  return o;
}

// 8
Outcome pushforward_pullback() {
  Outcome o;
  auto phi = phi_example();
  auto b = phi.source(), c = phi.target();
  auto u = with_zero(b, enumerate_indecomposables(b, 4).modules);
  auto push = AllowableClass::pushforward(phi, AllowableClass::all(c));
  auto pull = AllowableClass::pullback(phi, AllowableClass::all(c)).with_universe(u);
  std::size_t maps = 0;
  for (const auto& m : u) {
    bool bc = m.dim() > 0 && is_projective(base_change(m, phi).module);
    o.require(m.dim() == 0 || relative_projectives_test(m, push) == bc, "relative projectivity");
  }
  for (const auto& m : u)
    for (const auto& n : u)
      for (const auto& f : all_homs(m, n)) {
        bool rel = is_class_stable_equivalence(f, push).has_value();
        bool abs = is_stable_equivalence(base_change_hom(f, phi)).has_value();
        o.require(rel == abs, "stable equivalence on " + describe_hom(f, u));
        ++maps;
      }
  auto r = retractile_sectile_check(pull, u, 100000, 0, ClosureProperty::Retractile);
  o.require(r.passed && r.regime == Regime::Exhaustive, "retractile monics");
  if (o.ok) o.detail = std::to_string(maps) + " maps, " + std::to_string(r.count) + " composable pairs";
  return o;
}

// 9
Outcome sectile_closure() {
  Outcome o;
  auto t2 = trunc_poly(2, 2);
  auto inds = enumerate_indecomposables(t2, 2).modules;
  std::vector<Module> u = {zero_module(t2)};
  for (const auto& m : inds) u.push_back(m);
  // the remaining dim <= 2 iso class
  u.push_back(direct_sum(t2, {inds[0], inds[0]}).module);
  auto rs = sectile_closure_check(AllowableClass::proj_generated(t2, {regular_module(t2)}), u);
  for (const auto& r : rs) o.require(r.passed && r.regime == Regime::Exhaustive, r.axiom);
  if (o.ok) o.detail = std::to_string(rs.size()) + " properties on 4 modules";
  return o;
}

// 10
Outcome les_report() {
  Outcome o;
  auto b = trunc_poly(2, 4);
  auto inc = subalgebra_generated(b, {b->parse_element("x^2")}).inclusion;
  auto r = les_tail_check(inc, phi_example(), 4);
  o.require(r.hypotheses.size() == 6, "hypothesis count");
  for (const auto& h : r.hypotheses) o.require(h.passed, "hypothesis " + h.name);
  o.require(!r.hypotheses.empty() && r.hypotheses[0].detail == "basis {1,x}", "freeness basis");
  o.require(r.a.group.to_string() == "Z/2" && r.b.group.to_string() == "Z/4" && r.c.group.to_string() == "Z/2",
            "groups");
  o.require(r.surjective_at_c && r.composite_zero && r.exact_at_b && !r.certificates.empty(), "exactness");
  o.require(r.variant_differs, "variant divergence not flagged");
  if (o.ok)
    o.detail = r.a.group.to_string() + " -> " + r.b.group.to_string() + " -> " + r.c.group.to_string() +
               " -> 0 exact; all-monos variant gives " + r.variant.group.to_string();
  return o;
}

// 11
Outcome krull_schmidt_descent() {
  Outcome o;
  auto b = trunc_poly(2, 4);
  auto sub = subalgebra_generated(b, {b->parse_element("x^2")});
  auto a = sub.algebra;
  auto basis = is_free_over_subalgebra(sub.inclusion, Side::Left);
  o.require(basis.has_value(), "B not free over A");
  if (!o.ok) return o;
  // every A-module structure on F_2^d: y acts by Y with Y^2 = 0
  std::vector<Module> all;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const auto& entries : oracle::all_vectors(2, d * d)) {
      FpMatrix y(2, d, d);
      for (std::size_t k = 0; k < d * d; ++k) y.set(k / d, k % d, entries[k]);
      if (!(y * y).is_zero()) continue;
      std::vector<FpMatrix> action;
      for (std::size_t i = 0; i < a->dim(); ++i) {
        auto img = sub.inclusion.apply(a->basis_vector(i));
        action.push_back(FpMatrix::identity(2, d).scaled(img[0]) + y.scaled(img[2]));
      }
      all.push_back(Module::create(a, action));
    }
  }
  // classes of M and of induce(M); descent means the induced class determines the class of M
  std::vector<Module> reps, ind_reps;
  std::map<std::size_t, std::size_t> ind_to_rep;
  for (const auto& m : all) {
    std::size_t ci = reps.size(), ii = ind_reps.size();
    for (std::size_t k = 0; k < reps.size(); ++k)
      if (reps[k].dim() == m.dim() && is_isomorphic(reps[k], m)) ci = k;
    if (ci == reps.size()) reps.push_back(m);
    auto im = induce(m, sub.inclusion, *basis);
    for (std::size_t k = 0; k < ind_reps.size(); ++k)
      if (ind_reps[k].dim() == im.dim() && is_isomorphic(ind_reps[k], im)) ii = k;
    if (ii == ind_reps.size()) ind_reps.push_back(im);
    auto [it, fresh] = ind_to_rep.emplace(ii, ci);
    o.require(fresh || it->second == ci, "induce(M) = induce(N) with M, N not isomorphic");
  }
  o.require(reps.size() == 5, "expected 5 iso classes of dim 1..3");
  if (o.ok)
    o.detail = std::to_string(all.size()) + " module structures, " + std::to_string(reps.size()) + " classes";
  return o;
}

// 12
Outcome determinism() {
  Outcome o;
  RunOptions opt;
  opt.max_dim = 4;
  opt.budget = 200;  // forces the sampled regime
  opt.cylinder_budget = 200;
  opt.seed = 17;
  Workspace ws;
  WaldhausenRequest req;
  req.algebra = "preset:trunc_poly:2:4";
  req.cylinder = true;
  std::vector<std::function<Json()>> runs = {
      [&] { return cmd_waldhausen_check(req, ws, opt).report; },
      [&] { return cmd_kgroups("preset:trunc_poly:2:4", "gst0", ws, opt).report; },
      [&] { return cmd_alg_info("preset:exterior:2:2", ws, opt).report; },
      [&] {
        auto b = trunc_poly(2, 4);
        auto inc = subalgebra_generated(b, {b->parse_element("x^2")}).inclusion;
        return cmd_les_check(inc, phi_example(), Json::object(), opt).report;
      },
  };
  bool sampled = false;
  for (const auto& f : runs) {
    auto first = f().dump(2), second = f().dump(2);
    o.require(first == second, "reports differ between runs");
    sampled |= first.find("\"sampled\"") != std::string::npos;
  }
  o.require(sampled, "no sampled regime exercised");
  if (o.ok) o.detail = std::to_string(runs.size()) + " reports byte-identical, sampled regime included";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "unit groups", 1, unit_groups},
      {2, "K0 -> G0 over F2[x]/x^2", 1, cartan_map},
      {3, "indecomposable census", 30, census},
      {4, "degree-zero stable G-theory", 60, stable_g_theory},
      {5, "quasi-Frobenius verdicts", 60, qf_verdicts},
      {6, "Waldhausen axiom suite", 300, axiom_suite},
      {7, "cylinder suite", 60, cylinder_suite},
      {8, "push-forward/pull-back coherence", 60, pushforward_pullback},
      {9, "sectile closure", 30, sectile_closure},
      {10, "LES tail report", 120, les_report},
      {11, "Krull-Schmidt descent", 60, krull_schmidt_descent},
      {12, "determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit_s) {
      o.ok = false;
      o.detail += " (over the time limit)";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s %2d %-34s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
