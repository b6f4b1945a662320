#include "stabg/commands.hpp"

#include <fstream>
#include <sstream>

#include "stabg/decomp.hpp"
#include "stabg/errors.hpp"

namespace stabg {
namespace {

Json int_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

Json int_vector_json(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

Json int_matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(int_vector_json(m.row(r)));
  return out;
}

/// Shape kept explicitly so empty blocks round-trip.
Json fp_matrix_json(const FpMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(row);
  }
  Json out;
  out["shape"] = {m.rows(), m.cols()};
  out["rows"] = rows;
  return out;
}

FpMatrix fp_matrix_from_json(Scalar p, const Json& j) {
  auto shape = j.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2) throw InputError("matrix shape needs two entries");
  std::vector<std::vector<long long>> rows;
  for (const auto& r : j.at("rows")) rows.push_back(r.get<std::vector<long long>>());
  if (rows.size() != shape[0]) throw InputError("matrix row count does not match its shape");
  for (const auto& r : rows)
    if (r.size() != shape[1]) throw InputError("matrix row length does not match its shape");
  FpMatrix m(p, shape[0], shape[1]);
  for (std::size_t r = 0; r < shape[0]; ++r)
    for (std::size_t c = 0; c < shape[1]; ++c) {
      long long v = rows[r][c] % static_cast<long long>(p);
      m.set(r, c, static_cast<Scalar>(v < 0 ? v + p : v));
    }
  return m;
}

Json group_json(const AbelianGroup& g) {
  Json out;
  out["structure"] = g.to_string();
  out["free_rank"] = g.free_rank;
  out["torsion"] = int_vector_json(g.torsion);
  return out;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json algebra_json(const std::string& ref, const AlgebraPtr& alg) {
  Json a;
  a["ref"] = ref;
  a["p"] = alg->p();
  a["dim"] = alg->dim();
  a["labels"] = alg->labels();
  a["commutative"] = alg->is_commutative();
  return a;
}

std::vector<std::size_t> dims_of(const std::vector<Module>& ms) {
  std::vector<std::size_t> out;
  for (const auto& m : ms) out.push_back(m.dim());
  return out;
}

/// dim A, dim J, dim J², ... down to the first zero power.
std::vector<std::size_t> radical_series(const AlgebraPtr& alg) {
  std::vector<std::size_t> out{alg->dim()};
  auto j = jacobson_radical(alg);
  Ideal power = j;
  out.push_back(power.dim());
  while (power.dim() > 0 && out.size() <= alg->dim()) {
    std::vector<Vec> products;
    for (const auto& a : power.basis)
      for (const auto& b : j.basis) products.push_back(alg->multiply(a, b));
    power = ideal_generated(alg, products);
    out.push_back(power.dim());
  }
  return out;
}

std::vector<Module> build_universe(const WaldhausenRequest& req, const AlgebraPtr& alg, const Workspace& ws,
                                   const RunOptions& opt) {
  std::vector<Module> u{zero_module(alg)};
  if (req.universe.empty()) {
    for (auto& m : enumerate_indecomposables(alg, opt.max_dim, opt.cap).modules) u.push_back(m);
    return u;
  }
  for (const auto& r : req.universe) {
    if (r == "zero") continue;
    u.push_back(resolve_module(r, alg, ws, {}));
  }
  return u;
}

WaldhausenSpec build_spec(const WaldhausenRequest& req, const AlgebraPtr& alg, const Workspace& ws,
                          const std::vector<Module>& universe) {
  auto spec = WaldhausenSpec::create(parse_class(req.cof, alg, ws, universe), parse_class(req.we, alg, ws, universe));
  if (req.we_fixture == "odd-dims") {
    spec.we_override = [](const ModuleHom& f) {
      return f.is_iso() || (f.source().dim() % 2 == 1 && f.target().dim() % 2 == 1);
    };
  } else if (!req.we_fixture.empty()) {
    throw InputError("unknown weak-equivalence fixture '" + req.we_fixture + "'");
  }
  return spec;
}

Json waldhausen_input_json(const WaldhausenRequest& req, const RunOptions& opt) {
  Json in;
  in["algebra"] = req.algebra;
  in["workspace"] = opt.workspace;
  in["cof"] = req.cof;
  in["we"] = req.we;
  in["we_fixture"] = req.we_fixture;
  in["universe"] = req.universe;
  in["cylinder"] = req.cylinder;
  in["max_dim"] = opt.max_dim;
  in["budget"] = opt.budget;
  in["cylinder_budget"] = opt.cylinder_budget;
  in["seed"] = opt.seed;
  in["cap"] = opt.cap;
  return in;
}

Json universe_json(const std::vector<Module>& u) {
  Json out = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    Json m;
    m["id"] = "U" + std::to_string(i);
    m["dim"] = u[i].dim();
    m["projective"] = u[i].dim() > 0 && is_projective(u[i]);
    out.push_back(m);
  }
  return out;
}

void render(std::ostringstream& out, const Json& j, int indent);

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) {
      // matrices print inline as well
      if (!x.is_array()) return false;
      for (const auto& y : x)
        if (y.is_structured()) return false;
    }
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostringstream& out, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !is_scalar_array(v) && !v.empty()) {
        out << pad << k << ":\n";
        render(out, v, indent + 2);
      } else {
        out << pad << k << ": " << scalar_text(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() && !v.empty()) {
        // first field shares the bullet line
        std::ostringstream item;
        render(item, v, indent + 2);
        auto text = item.str();
        out << pad << "- " << text.substr(pad.size() + 2);
      } else {
        out << pad << "- " << scalar_text(v) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

Json presentation_json(const AbelianGroupPresentation& g) {
  Json j;
  j["group"] = group_json(g.group);
  j["generators"] = g.labels;
  Json images = Json::array();
  for (const auto& im : g.generator_images) images.push_back(int_vector_json(im));
  j["generator_images"] = images;
  j["relation_count"] = g.relations.rows();
  j["relations"] = g.relation_text;
  j["incomplete"] = g.incomplete;
  j["notes"] = g.notes;
  return j;
}

Json group_map_json(const GroupMap& f) {
  Json j;
  j["matrix"] = int_matrix_json(f.matrix);
  j["well_defined"] = f.well_defined;
  j["witness"] = f.witness;
  j["notes"] = f.notes;
  return j;
}

Json check_report_json(const CheckReport& r) {
  Json j;
  j["axiom"] = r.axiom;
  j["passed"] = r.passed;
  j["regime"] = regime_name(r.regime);
  j["count"] = r.count;
  j["seed"] = r.seed;
  Json ws = Json::array();
  for (const auto& d : r.witnesses) {
    Json w;
    w["objects"] = d.objects;
    Json maps = Json::array();
    for (const auto& m : d.maps) maps.push_back(fp_matrix_json(m));
    w["maps"] = maps;
    w["text"] = d.text;
    ws.push_back(w);
  }
  j["witnesses"] = ws;
  j["notes"] = r.notes;
  return j;
}

Json exactness_json(const ExactnessReport& r) {
  Json j;
  j["stage"] = r.stage;
  Json hyp = Json::array();
  for (const auto& h : r.hypotheses) {
    Json x;
    x["name"] = h.name;
    x["passed"] = h.passed;
    x["detail"] = h.detail;
    hyp.push_back(x);
  }
  j["hypotheses"] = hyp;
  j["hypotheses_passed"] = r.hypotheses_passed();
  j["skipped"] = r.skipped;
  if (r.skipped) {
    j["passed"] = false;
    return j;
  }
  Json groups;
  groups["A"] = presentation_json(r.a);
  groups["B"] = presentation_json(r.b);
  groups["C"] = presentation_json(r.c);
  j["groups"] = groups;
  j["sequence"] = r.a.group.to_string() + " -> " + r.b.group.to_string() + " -> " + r.c.group.to_string() + " -> 0";
  Json maps;
  maps["alpha"] = group_map_json(r.alpha);
  maps["naive_beta"] = group_map_json(r.naive_beta);
  maps["to_relative"] = group_map_json(r.to_relative);
  maps["lemma"] = group_map_json(r.lemma);
  maps["beta"] = group_map_json(r.beta);
  j["maps"] = maps;
  j["relative"] = presentation_json(r.relative);
  Json v;
  v["lemma_iso"] = r.lemma_iso;
  v["surjective_at_c"] = r.surjective_at_c;
  v["composite_zero"] = r.composite_zero;
  v["exact_at_b"] = r.exact_at_b;
  j["verdicts"] = v;
  j["certificates"] = r.certificates;
  Json var;
  var["cofibrations"] = "all monomorphisms";
  var["group"] = presentation_json(r.variant);
  var["map"] = group_map_json(r.variant_map);
  var["differs"] = r.variant_differs;
  if (r.variant_differs)
    var["flag"] = "the all-monos variant gives " + r.variant.group.to_string() + ", not " + r.c.group.to_string();
  j["variant"] = var;
  j["fiber_notes"] = r.fiber_notes;
  j["passed"] = r.passed();
  return j;
}

CommandResult cmd_alg_info(const std::string& ref, const Workspace& ws, const RunOptions&) {
  auto alg = ws.algebra(ref);
  CommandResult res;
  auto& j = res.report;
  j = header("alg info");
  j["algebra"] = algebra_json(ref, alg);
  auto series = radical_series(alg);
  j["radical_series"] = series;
  j["semisimple"] = series[1] == 0;
  const auto& pd = projective_data(alg);
  j["simples"] = dims_of(pd.simples);
  j["indecomposable_projectives"] = dims_of(pd.projectives);
  j["indecomposable_injectives"] = dims_of(pd.injectives);
  j["quasi_frobenius"] = check_quasi_frobenius(alg);
  if (alg->is_commutative()) {
    auto u = unit_group(alg);
    Json ug;
    ug["structure"] = u.structure.to_string();
    ug["order"] = u.order;
    Json gens = Json::array();
    for (const auto& g : u.generators) gens.push_back(alg->format_element(g));
    ug["generators"] = gens;
    j["unit_group"] = ug;
  } else {
    j["unit_group"] = nullptr;
  }
  return res;
}

CommandResult cmd_kgroups(const std::string& ref, const std::string& theory, const Workspace& ws,
                          const RunOptions& opt) {
  auto alg = ws.algebra(ref);
  CommandResult res;
  auto& j = res.report;
  j = header("kgroups");
  j["algebra"] = algebra_json(ref, alg);
  j["theory"] = theory;
  j["max_dim"] = opt.max_dim;
  if (theory == "k0g0") {
    j["source"] = presentation_json(k0(alg));
    j["target"] = presentation_json(g0(alg));
    j["map"] = group_map_json(k0_to_g0(alg));
    return res;
  }
  AbelianGroupPresentation g;
  if (theory == "k0") g = k0(alg);
  else if (theory == "g0") g = g0(alg);
  else if (theory == "rep") g = rep_split(alg, opt.max_dim);
  else if (theory == "stabrep") g = stabrep_split(alg, opt.max_dim);
  else if (theory == "gst0") g = gst0(alg, opt.max_dim);
  else throw InputError("unknown theory '" + theory + "' (k0, g0, rep, stabrep, gst0, k0g0)");
  j["presentation"] = presentation_json(g);
  return res;
}

CommandResult cmd_modules(const std::string& ref, const std::string& output, const Workspace& ws,
                          const RunOptions& opt) {
  auto alg = ws.algebra(ref);
  auto mods = enumerate_indecomposables(alg, opt.max_dim, opt.cap).modules;
  CommandResult res;
  auto& j = res.report;
  j = header("modules");
  j["algebra"] = algebra_json(ref, alg);
  j["max_dim"] = opt.max_dim;
  Json list = Json::array();
  std::ostringstream file;
  if (ref.rfind("preset:", 0) == 0) {
    file << "algebra A " << ref << "\n";
  } else {
    file << "algebra A begin\n" << format_algebra(alg) << "end\n";
  }
  auto ids = dimension_labels(mods);
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const auto& id = ids[i];
    Json m;
    m["id"] = id;
    m["dim"] = mods[i].dim();
    m["projective"] = is_projective(mods[i]);
    m["injective"] = is_injective(mods[i]);
    list.push_back(m);
    auto body = format_module(mods[i], "A");
    file << "module " << id << body.substr(std::string("module").size());
  }
  j["modules"] = list;
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw InputError("cannot write '" + output + "'");
    out << file.str();
    j["written"] = output;
  }
  return res;
}

CommandResult cmd_waldhausen_check(const WaldhausenRequest& req, const Workspace& ws, const RunOptions& opt) {
  auto alg = ws.algebra(req.algebra);
  auto universe = build_universe(req, alg, ws, opt);
  auto spec = build_spec(req, alg, ws, universe);

  CommandResult res;
  auto& j = res.report;
  j = header("waldhausen-check");
  j["input"] = waldhausen_input_json(req, opt);
  j["universe"] = universe_json(universe);
  j["cofibrations"] = spec.cof.describe();
  j["weak_equivalences"] = req.we_fixture.empty() ? spec.we.describe() : "fixture " + req.we_fixture;

  auto reports = check_axioms(spec, universe, opt.budget, opt.seed);
  if (req.cylinder) {
    try {
      auto cone = build_cone_functor_absolute(alg);
      for (auto& r : check_cylinder_axioms(spec, cone, universe, opt.cylinder_budget, opt.seed))
        reports.push_back(std::move(r));
    } catch (const NotQuasiFrobenius& e) {
      CheckReport refused;
      refused.axiom = "cone functor";
      refused.passed = false;
      refused.notes.push_back(e.what());
      reports.push_back(std::move(refused));
    }
  }
  Json rs = Json::array();
  for (const auto& r : reports) rs.push_back(check_report_json(r));
  j["reports"] = rs;
  j["passed"] = all_passed(reports);
  res.exit_code = all_passed(reports) ? kPass : kCheckFailed;
  return res;
}

WaldhausenRequest request_from_report(const Json& report, RunOptions& opt) {
  if (!report.is_object() || report.value("schema", 0) != kSchemaVersion ||
      report.value("command", std::string()) != "waldhausen-check" || !report.contains("input"))
    throw InputError("witness file is not a schema-1 waldhausen-check report");
  const auto& in = report["input"];
  WaldhausenRequest req;
  try {
    req.algebra = in.at("algebra").get<std::string>();
    req.cof = in.at("cof").get<std::string>();
    req.we = in.at("we").get<std::string>();
    req.we_fixture = in.at("we_fixture").get<std::string>();
    req.universe = in.at("universe").get<std::vector<std::string>>();
    req.cylinder = in.at("cylinder").get<bool>();
    opt.max_dim = in.at("max_dim").get<std::size_t>();
    opt.budget = in.at("budget").get<std::size_t>();
    opt.cylinder_budget = in.at("cylinder_budget").get<std::size_t>();
    opt.seed = in.at("seed").get<std::uint64_t>();
    opt.cap = in.at("cap").get<std::size_t>();
    opt.workspace = in.at("workspace").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("witness file input section: ") + e.what());
  }
  return req;
}

CommandResult cmd_verify_witness(const Json& previous, const Workspace& ws) {
  RunOptions opt;
  auto req = request_from_report(previous, opt);
  auto alg = ws.algebra(req.algebra);
  auto universe = build_universe(req, alg, ws, opt);
  auto spec = build_spec(req, alg, ws, universe);
  std::optional<ConeFunctor> cone;
  if (req.cylinder && check_quasi_frobenius(alg)) cone = build_cone_functor_absolute(alg);

  CommandResult res;
  auto& j = res.report;
  j = header("verify-witness");
  j["input"] = previous["input"];
  Json out = Json::array();
  bool any = false;
  try {
  for (const auto& r : previous.at("reports")) {
    const auto& axiom = r.at("axiom").get<std::string>();
    std::size_t k = 0;
    for (const auto& w : r.at("witnesses")) {
      Diagram d;
      d.objects = w.at("objects").get<std::vector<std::size_t>>();
      for (const auto& m : w.at("maps")) d.maps.push_back(fp_matrix_from_json(alg->p(), m));
      d.text = w.value("text", "");
      for (auto o : d.objects)
        if (o >= universe.size()) throw InputError("witness names object U" + std::to_string(o) + " outside the universe");
      bool holds = verify_diagram(spec, universe, axiom, d, cone ? &*cone : nullptr);
      Json x;
      x["axiom"] = axiom;
      x["witness"] = k++;
      x["reproduced"] = !holds;
      any |= !holds;
      out.push_back(x);
    }
  }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed witness: ") + e.what());
  }
  j["witnesses"] = out;
  j["reproduced_any"] = any;
  res.exit_code = any ? kCheckFailed : kPass;
  return res;
}

CommandResult cmd_les_check(const AlgebraMorphism& inclusion, const AlgebraMorphism& phi, const Json& input,
                            const RunOptions& opt) {
  auto r = les_tail_check(inclusion, phi, opt.max_dim, opt.budget, opt.seed);
  CommandResult res;
  res.report = header("les-check");
  res.report["input"] = input;
  res.report["report"] = exactness_json(r);
  res.report["passed"] = r.passed();
  res.exit_code = r.passed() ? kPass : kCheckFailed;
  return res;
}

CommandResult cmd_tower_check(const TowerFile& tower, const Json& input, const RunOptions& opt) {
  auto reps = tower_check(tower.algebra, tower.stages, opt.max_dim, opt.budget, opt.seed);
  CommandResult res;
  res.report = header("tower-check");
  res.report["input"] = input;
  Json stages = Json::array();
  bool ok = true;
  for (const auto& r : reps) {
    stages.push_back(exactness_json(r));
    ok &= r.passed();
  }
  res.report["stages"] = stages;
  res.report["passed"] = ok;
  res.exit_code = ok ? kPass : kCheckFailed;
  return res;
}

CommandResult error_result(const std::string& command, const std::exception& e) {
  CommandResult res;
  res.report = header(command);
  std::string kind = "error";
  if (dynamic_cast<const CapExceeded*>(&e)) {
    res.exit_code = kCapExceeded;
    kind = "cap exceeded";
  } else if (dynamic_cast<const ParseError*>(&e)) {
    res.exit_code = kInputError;
    kind = "parse error";
  } else if (dynamic_cast<const InputError*>(&e)) {
    res.exit_code = kInputError;
    kind = "input error";
  } else {
    res.exit_code = kCheckFailed;
  }
  Json err;
  err["kind"] = kind;
  err["message"] = e.what();
  if (auto* pe = dynamic_cast<const ParseError*>(&e)) err["line"] = pe->line();
  res.report["error"] = err;
  res.report["passed"] = false;
  return res;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(out, report, 0);
  return out.str();
}

}  // namespace stabg
