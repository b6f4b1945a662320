#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stabg/waldhausen.hpp"

namespace stabg {

/// Z^n modulo the row lattice of `relations`, generators labelled by modules.
struct AbelianGroupPresentation {
  std::vector<std::string> labels;
  std::vector<Module> generators;  ///< may be empty for presentations not indexed by modules
  IntMatrix relations;             ///< one row per relation, one column per generator
  std::vector<std::string> relation_text;
  AbelianGroup group;
  /// Coordinates of each generator in the invariant-factor decomposition: torsion parts reduced mod d_i, then free.
  std::vector<std::vector<BigInt>> generator_images;
  bool incomplete = false;  ///< enumeration bound may have missed generators or relations
  std::vector<std::string> notes;

  std::size_t size() const { return labels.size(); }
  /// x lies in the relation lattice (x is zero in the group).
  bool is_zero(const std::vector<BigInt>& x) const;
  std::vector<BigInt> reduce(const std::vector<BigInt>& x) const;

 private:
  friend AbelianGroupPresentation present(std::vector<std::string>, std::vector<Module>, IntMatrix,
                                          std::vector<std::string>);
  IntMatrix v_;  ///< right SNF transform
  std::vector<BigInt> diag_;
};

AbelianGroupPresentation present(std::vector<std::string> labels, std::vector<Module> generators, IntMatrix relations,
                                 std::vector<std::string> relation_text);

/// "M<d>" labels, with ".k" suffixes when several generators share a dimension.
std::vector<std::string> dimension_labels(const std::vector<Module>& mods, const std::string& letter = "M");

struct GroupMap {
  IntMatrix matrix;  ///< rows: source generators, columns: target generators (row-vector convention)
  bool well_defined = true;
  std::string witness;  ///< first source relation whose image is nonzero
  std::vector<std::string> notes;
};

AbelianGroupPresentation g0(const AlgebraPtr& alg);
std::vector<BigInt> class_in_g0(const Module& m);
AbelianGroupPresentation k0(const AlgebraPtr& alg);
GroupMap k0_to_g0(const AlgebraPtr& alg);
AbelianGroupPresentation rep_split(const AlgebraPtr& alg, std::size_t max_dim);
AbelianGroupPresentation stabrep_split(const AlgebraPtr& alg, std::size_t max_dim);
/// Stable representation group modulo [L] - [Y] + [N] for every extension 0 -> L -> Y -> N -> 0 of enumerated
/// indecomposables. Relations whose middle term has a summand outside the enumeration are skipped and flagged.
AbelianGroupPresentation gst0(const AlgebraPtr& alg, std::size_t max_dim);

/// Class of m over the generators; projective summands count as zero when `projectives_zero`.
/// Throws ClosureEscape when a summand is not among the generators.
std::vector<BigInt> class_of(const Module& m, const AbelianGroupPresentation& g, bool projectives_zero);

/// Generators: indecomposable summands of universe modules (enumerated up to max_dim when the universe is empty).
/// Relations: [Y] = [X] + [Y/X] for cofibrations X -> Y, [M] = [N] when a weak equivalence M -> N exists,
/// [M] = 0 when M -> 0 is a weak equivalence. Hom sets are sampled with `seed` once their total passes `budget`.
/// Throws ClosureEscape.
AbelianGroupPresentation waldhausen_k0(const WaldhausenSpec& spec, std::vector<Module> universe, std::size_t max_dim,
                                       std::size_t budget = 100000, std::uint64_t seed = 0);

using ModuleFunctor = std::function<Module(const Module&)>;
/// Generator-wise map [M] -> [F(M)]; well_defined is checked on every source relation.
GroupMap induced_map(const ModuleFunctor& f, const AbelianGroupPresentation& source,
                     const AbelianGroupPresentation& target, bool projectives_zero = true);
/// Homomorphism defined on a greedily chosen generating set of the source group, images given per generator.
/// well_defined fails when some relation among the chosen generators has nonzero image.
GroupMap greedy_map(const AbelianGroupPresentation& source, const AbelianGroupPresentation& target,
                    const std::vector<std::vector<BigInt>>& images);
GroupMap compose(const GroupMap& g, const GroupMap& f);
bool is_surjective(const GroupMap& f, const AbelianGroupPresentation& target);

struct Hypothesis {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExactnessReport {
  std::string stage;
  std::vector<Hypothesis> hypotheses;
  bool skipped = false;  ///< hypotheses failed; no exactness verdicts
  AbelianGroupPresentation a, b, c;
  GroupMap alpha;        ///< induction gst0(A) -> gst0(B)
  GroupMap naive_beta;   ///< generator-wise base change gst0(B) -> gst0(C)
  AbelianGroupPresentation relative;  ///< K0 of (Pullback(φ, All), Pushforward(φ, All)) over B
  GroupMap to_relative;  ///< gst0(B) -> relative, greedy
  GroupMap lemma;        ///< relative -> gst0(C), [M] -> [base_change M]
  GroupMap beta;         ///< lemma ∘ to_relative
  bool lemma_iso = false;
  bool surjective_at_c = false;
  bool composite_zero = false;
  bool exact_at_b = false;
  std::vector<std::string> certificates;
  AbelianGroupPresentation variant;  ///< K0 with all monos as cofibrations
  GroupMap variant_map;
  bool variant_differs = false;
  std::vector<std::string> fiber_notes;

  bool hypotheses_passed() const;
  bool passed() const { return !skipped && hypotheses_passed() && surjective_at_c && exact_at_b; }
};

/// Degree-zero tail gst0(A) -> gst0(B) -> gst0(C) -> 0 for A ⊆ B (B left-free over A) and φ: B -> C.
ExactnessReport les_tail_check(const AlgebraMorphism& inclusion, const AlgebraMorphism& phi, std::size_t max_dim,
                               std::size_t budget = 100000, std::uint64_t seed = 0);

/// One stage: A = subalgebra generated by `sub`, C = B / (ideal generated by `ideal`); elements in algebra syntax.
struct TowerStage {
  std::vector<std::string> sub, ideal;
};
/// Applies the stages in turn, each to the quotient produced by the previous one.
std::vector<ExactnessReport> tower_check(const AlgebraPtr& b, const std::vector<TowerStage>& stages,
                                         std::size_t max_dim, std::size_t budget = 100000, std::uint64_t seed = 0);

}  // namespace stabg
