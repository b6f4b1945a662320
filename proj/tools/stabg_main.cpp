#include <iostream>

#include "CLI11.hpp"
#include "stabg/commands.hpp"
#include "stabg/errors.hpp"

using namespace stabg;

namespace {

std::vector<std::string> element_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty() && cur != "none") out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

std::vector<Vec> elements(const AlgebraPtr& alg, const std::string& s) {
  std::vector<Vec> out;
  for (const auto& e : element_list(s)) out.push_back(alg->parse_element(e));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabg: stable module categories and degree-zero K-theory over finite algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  RunOptions opt;
  std::string workspace_path;
  app.add_flag("--json", json, "emit the JSON report");
  app.add_option("--max-dim", opt.max_dim, "enumeration bound on module dimension")->capture_default_str();
  app.add_option("--budget", opt.budget, "diagram budget before sampling")->capture_default_str();
  app.add_option("--cylinder-budget", opt.cylinder_budget, "square budget for the cylinder checks")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for sampled regimes")->capture_default_str();
  app.add_option("--cap", opt.cap, "enumeration cap")->capture_default_str();
  app.add_option("--workspace", workspace_path, "workspace file with named algebras, morphisms and modules");

  auto* alg_cmd = app.add_subcommand("alg", "algebra queries");
  alg_cmd->require_subcommand(1);
  auto* info_cmd = alg_cmd->add_subcommand("info", "radical series, simples, projectives, QF verdict, units");
  std::string alg_ref;
  info_cmd->add_option("algebra", alg_ref, "preset:<name>:<p>[:<n>], workspace id or algebra file")->required();

  auto* kg_cmd = app.add_subcommand("kgroups", "K0, G0, representation groups, gst0");
  std::string theory;
  kg_cmd->add_option("algebra", alg_ref)->required();
  kg_cmd->add_option("theory", theory, "k0 | g0 | rep | stabrep | gst0 | k0g0")->required();

  auto* mod_cmd = app.add_subcommand("modules", "indecomposables up to --max-dim, optionally as a workspace file");
  std::string modules_out;
  mod_cmd->add_option("algebra", alg_ref)->required();
  mod_cmd->add_option("-o,--output", modules_out, "write the module list here");

  auto* wc_cmd = app.add_subcommand("waldhausen-check", "Waldhausen axioms over a finite universe");
  WaldhausenRequest wreq;
  std::string universe_list, verify_path;
  wc_cmd->add_option("algebra", wreq.algebra);
  wc_cmd->add_option("--cof", wreq.cof, "cofibration class")->capture_default_str();
  wc_cmd->add_option("--we", wreq.we, "weak-equivalence class")->capture_default_str();
  wc_cmd->add_option("--we-fixture", wreq.we_fixture, "odd-dims");
  wc_cmd->add_option("--universe", universe_list, "comma-separated module references");
  wc_cmd->add_flag("--cylinder", wreq.cylinder, "also check the absolute cylinder functor");
  wc_cmd->add_option("--verify-witness", verify_path, "re-evaluate the witnesses of a previous JSON report");

  auto* les_cmd = app.add_subcommand("les-check", "degree-zero tail gst0(A) -> gst0(B) -> gst0(C) -> 0");
  std::string sub_elems, ideal_elems, inclusion_id, phi_id;
  les_cmd->add_option("algebra", alg_ref, "B");
  les_cmd->add_option("--sub", sub_elems, "generators of A inside B ('none' for the scalars)");
  les_cmd->add_option("--ideal", ideal_elems, "generators of ker(B -> C) ('none' for C = B)");
  les_cmd->add_option("--inclusion", inclusion_id, "workspace morphism A -> B");
  les_cmd->add_option("--phi", phi_id, "workspace morphism B -> C");

  auto* tower_cmd = app.add_subcommand("tower-check", "LES tails along a tower of quotients");
  std::string tower_path;
  tower_cmd->add_option("file", tower_path, "tower file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  CommandResult res;
  try {
    opt.workspace = workspace_path;
    Workspace ws = workspace_path.empty() ? Workspace{} : Workspace::load(workspace_path);
    if (*alg_cmd) {
      command = "alg info";
      res = cmd_alg_info(alg_ref, ws, opt);
    } else if (*mod_cmd) {
      res = cmd_modules(alg_ref, modules_out, ws, opt);
    } else if (*kg_cmd) {
      res = cmd_kgroups(alg_ref, theory, ws, opt);
    } else if (*wc_cmd) {
      if (!verify_path.empty()) {
        command = "verify-witness";
        auto prev = Json::parse(read_file(verify_path), nullptr, false);
        if (prev.is_discarded()) throw InputError("'" + verify_path + "' is not JSON");
        RunOptions recorded;
        request_from_report(prev, recorded);
        Workspace rws = recorded.workspace.empty() ? Workspace{} : Workspace::load(recorded.workspace);
        res = cmd_verify_witness(prev, rws);
      } else {
        if (wreq.algebra.empty()) throw InputError("waldhausen-check needs an algebra");
        wreq.universe = element_list(universe_list);
        res = cmd_waldhausen_check(wreq, ws, opt);
      }
    } else if (*les_cmd) {
      Json input;
      input["workspace"] = workspace_path;
      if (!inclusion_id.empty() || !phi_id.empty()) {
        if (inclusion_id.empty() || phi_id.empty()) throw InputError("--inclusion and --phi go together");
        input["inclusion"] = inclusion_id;
        input["phi"] = phi_id;
        input["max_dim"] = opt.max_dim;
        res = cmd_les_check(ws.morphism(inclusion_id), ws.morphism(phi_id), input, opt);
      } else {
        if (alg_ref.empty()) throw InputError("les-check needs an algebra or --inclusion/--phi");
        auto b = ws.algebra(alg_ref);
        input["algebra"] = alg_ref;
        input["sub"] = element_list(sub_elems);
        input["ideal"] = element_list(ideal_elems);
        input["max_dim"] = opt.max_dim;
        auto inc = subalgebra_generated(b, elements(b, sub_elems)).inclusion;
        auto phi = quotient_by_ideal(ideal_generated(b, elements(b, ideal_elems))).projection;
        res = cmd_les_check(inc, phi, input, opt);
      }
    } else if (*tower_cmd) {
      auto tower = parse_tower(read_file(tower_path), ws);
      Json input;
      input["file"] = tower_path;
      input["workspace"] = workspace_path;
      input["max_dim"] = opt.max_dim;
      res = cmd_tower_check(tower, input, opt);
    }
  } catch (const std::exception& e) {
    res = error_result(command, e);
    std::cerr << "error: " << e.what() << "\n";
  }

  if (json)
    std::cout << res.report.dump(2) << "\n";
  else
    std::cout << render_text(res.report);
  return res.exit_code;
}
