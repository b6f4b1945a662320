#pragma once

#include <map>
#include <string>
#include <vector>

#include "stabg/kzero.hpp"

namespace stabg {

/// Algebra file:
///   p <prime> dim <n>
///   <label_0> ... <label_{n-1}>
///   <unit coordinates>
///   i j : k c k c ...        (n² lines; e_i e_j = Σ c e_k, empty right side for zero)
/// '#' starts a comment. Line numbers in errors count from 1 within `text`.
AlgebraPtr parse_algebra(const std::string& text, const std::string& name = "", std::size_t first_line = 1);
std::string format_algebra(const AlgebraPtr& alg);

/// Module body: one dim×dim matrix per algebra basis element, rows as whitespace-separated entries.
Module parse_module(const AlgebraPtr& alg, std::size_t dim, const std::vector<std::string>& rows,
                    std::size_t first_line = 1);
std::string format_module(const Module& m, const std::string& algebra_id);

/// Named algebras, morphisms and modules from a workspace file. Sections:
///   algebra <id> preset:<name>:<p>:<n>
///   algebra <id> file <path>
///   algebra <id> begin / <algebra file lines> / end
///   morphism <id> <source-id> <target-id> begin / <rows> / end
///   subalgebra <id> <algebra-id> <elements...>    defines algebra <id> and morphism <id>.inc
///   quotient <id> <algebra-id> <elements...>      defines algebra <id> and morphism <id>.proj
///   module <id> <algebra-id> <dim> begin / <rows> / end
class Workspace {
 public:
  /// Relative `file` paths resolve against base_dir.
  static Workspace parse(const std::string& text, const std::string& base_dir = "");
  static Workspace load(const std::string& path);

  /// An id, a preset reference preset:<name>:<p>[:<n>], or an algebra file path.
  AlgebraPtr algebra(const std::string& ref) const;
  const AlgebraMorphism& morphism(const std::string& id) const;
  const Module& module(const std::string& id) const;
  bool has_module(const std::string& id) const { return modules_.count(id) > 0; }

 private:
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, AlgebraMorphism> morphisms_;
  std::map<std::string, Module> modules_;
};

AlgebraPtr parse_preset_ref(const std::string& ref);
std::string read_file(const std::string& path);

/// Module reference inside class descriptors and universe lists: a workspace id, zero, regular, coregular,
/// or U<i> for the i-th member of `universe`.
Module resolve_module(const std::string& ref, const AlgebraPtr& alg, const Workspace& ws,
                      const std::vector<Module>& universe);

/// all | trivial | projgen <ids,> | injgen <ids,> | pullback <morphism> <class> | pushforward <morphism> <class>
/// The class lives over `alg` (the source of the morphism for pullback and pushforward). <morphism> is a workspace
/// id or proj:<elements,> for the projection of `alg` onto its quotient by the ideal those elements generate.
AllowableClass parse_class(const std::string& text, const AlgebraPtr& alg, const Workspace& ws,
                           const std::vector<Module>& universe);

/// Tower file:
///   algebra <ref>
///   stage <sub elements, comma separated> ; <ideal elements, comma separated>
struct TowerFile {
  AlgebraPtr algebra;
  std::vector<TowerStage> stages;
};
TowerFile parse_tower(const std::string& text, const Workspace& ws);

}  // namespace stabg
