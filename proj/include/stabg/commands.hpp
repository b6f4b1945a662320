#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabg/textio.hpp"

namespace stabg {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2, kCapExceeded = 3 };

struct RunOptions {
  std::size_t max_dim = 4;
  std::size_t budget = 100000;
  std::size_t cylinder_budget = 2000;
  std::uint64_t seed = 0;
  std::size_t cap = 1u << 20;  ///< enumeration cap
  std::string workspace;      ///< path, recorded in reports
};

struct CommandResult {
  Json report;
  int exit_code = kPass;
};

CommandResult cmd_alg_info(const std::string& ref, const Workspace& ws, const RunOptions& opt);

/// theory: k0, g0, rep, stabrep, gst0, or k0g0 for the Cartan map K0 -> G0.
CommandResult cmd_kgroups(const std::string& ref, const std::string& theory, const Workspace& ws,
                          const RunOptions& opt);

/// Indecomposables up to max_dim; when `output` is nonempty they are also written there as a workspace file
/// (algebra id A, module ids from dimension_labels).
CommandResult cmd_modules(const std::string& ref, const std::string& output, const Workspace& ws,
                          const RunOptions& opt);

struct WaldhausenRequest {
  std::string algebra;
  std::string cof = "all", we = "all";
  /// Module references; empty means zero plus the indecomposables up to max_dim.
  std::vector<std::string> universe;
  /// "odd-dims": weak equivalences are the isomorphisms and every map between odd-dimensional modules.
  std::string we_fixture;
  bool cylinder = false;
};

CommandResult cmd_waldhausen_check(const WaldhausenRequest& req, const Workspace& ws, const RunOptions& opt);
/// Re-evaluates each witness of a previous waldhausen-check report against the structure recorded in its input
/// section. Exit 1 when some recorded failure reproduces, 0 when none does.
CommandResult cmd_verify_witness(const Json& previous, const Workspace& ws);
/// Rebuilds the request and options stored in a waldhausen-check report.
WaldhausenRequest request_from_report(const Json& report, RunOptions& opt);

CommandResult cmd_les_check(const AlgebraMorphism& inclusion, const AlgebraMorphism& phi, const Json& input,
                            const RunOptions& opt);
CommandResult cmd_tower_check(const TowerFile& tower, const Json& input, const RunOptions& opt);

Json presentation_json(const AbelianGroupPresentation& g);
Json group_map_json(const GroupMap& f);
Json exactness_json(const ExactnessReport& r);
Json check_report_json(const CheckReport& r);

/// Report for an exception escaping a command, with the matching exit code.
CommandResult error_result(const std::string& command, const std::exception& e);

/// Human-readable view of a report; a pure function of the JSON.
std::string render_text(const Json& report);

}  // namespace stabg
