#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabg/homproj.hpp"
#include "stabg/report.hpp"

namespace stabg {

enum class ClassKind { All, Trivial, ProjGenerated, InjGenerated, Pullback, Pushforward };

/// A decidable allowable class of short exact sequences over one algebra.
/// Pullback and Pushforward classes live over the source B of a surjection φ: B -> C; the inner class
/// lives over C. Generated classes always include the regular (resp. coregular) module among the generators.
class AllowableClass {
 public:
  static AllowableClass all(AlgebraPtr alg);
  static AllowableClass trivial(AlgebraPtr alg);
  /// Heller-type class: sequences on which hom(P, -) is exact for every generator P.
  static AllowableClass proj_generated(AlgebraPtr alg, std::vector<Module> gens);
  /// Sequences on which hom(-, I) is exact for every generator I.
  static AllowableClass inj_generated(AlgebraPtr alg, std::vector<Module> gens);
  /// Sequences whose base change along φ is short exact and in `inner`.
  static AllowableClass pullback(AlgebraMorphism phi, AllowableClass inner);
  /// Sequences of modules annihilated by ker φ that lie in `inner` when read over the target.
  static AllowableClass pushforward(AlgebraMorphism phi, AllowableClass inner);

  ClassKind kind() const { return d_->kind; }
  const AlgebraPtr& algebra() const { return d_->alg; }
  const std::vector<Module>& generators() const { return d_->gens; }
  /// generators() plus regular (ProjGenerated) or coregular (InjGenerated).
  const std::vector<Module>& effective_generators() const { return d_->effective; }
  const AlgebraMorphism& morphism() const;
  const AllowableClass& inner() const;

  /// Modules used by the universe-relative lifting tests (Pullback projectives and the like).
  AllowableClass with_universe(std::vector<Module> universe) const;
  const std::vector<Module>* universe() const { return d_->universe ? &*d_->universe : nullptr; }

  std::string describe() const;

 private:
  struct Data {
    ClassKind kind = ClassKind::All;
    AlgebraPtr alg;
    std::vector<Module> gens, effective;
    std::optional<AlgebraMorphism> phi;
    std::shared_ptr<const AllowableClass> inner;
    std::optional<std::vector<Module>> universe;
  };
  explicit AllowableClass(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// 0 -> X -> Y -> Y/X -> 0 for an injective f, and 0 -> ker g -> Y -> Z -> 0 for a surjective g.
ShortExact sequence_of_mono(const ModuleHom& f);
ShortExact sequence_of_epi(const ModuleHom& g);

bool is_member(const ShortExact& s, const AllowableClass& cls);
bool is_class_mono(const ModuleHom& f, const AllowableClass& cls);
bool is_class_epi(const ModuleHom& g, const AllowableClass& cls);

/// True for the kinds whose relative projectives (injectives) are only decided over a supplied universe.
bool projectives_test_universe_relative(const AllowableClass& cls);
bool injectives_test_universe_relative(const AllowableClass& cls);
bool relative_projectives_test(const Module& m, const AllowableClass& cls);
bool relative_injectives_test(const Module& m, const AllowableClass& cls);

/// Maps M -> N that are class-stably zero (factor through a relative projective), vectorised row-major.
/// For InjGenerated the ideal is maps factoring through the relative injectives.
Subspace class_stable_subspace(const Module& m, const Module& n, const AllowableClass& cls);
bool class_stably_equivalent(const ModuleHom& f, const ModuleHom& g, const AllowableClass& cls);
/// A quasi-inverse up to the class-stable ideal. For Pushforward classes the question is decided after base
/// change and the returned map is a quasi-inverse of base_change(f) over the target algebra.
std::optional<ModuleHom> is_class_stable_equivalence(const ModuleHom& f, const AllowableClass& cls);
/// Searches Hom(M, N) exhaustively; throws BudgetExceeded past `cap` maps.
bool class_stably_isomorphic(const Module& m, const Module& n, const AllowableClass& cls,
                             std::size_t cap = 1u << 16);

/// Number of elements of Hom(M, N), saturating at UINT64_MAX.
std::uint64_t hom_count(const Module& m, const Module& n);
/// Every element of Hom(M, N) in coefficient-counter order; throws BudgetExceeded past cap.
std::vector<ModuleHom> all_homs(const Module& m, const Module& n, std::size_t cap = 1u << 16);
ModuleHom hom_from_vec(const Module& m, const Module& n, const Vec& v);
/// "U<i>" when m is (pointer-)equal to a universe member, else "dim <d> module".
std::string describe_hom(const ModuleHom& f, const std::vector<Module>& universe);

using MembershipPredicate = std::function<bool(const ShortExact&)>;

/// Checks the sectile-closure properties of `cls` on all epis between universe modules: allowability,
/// sectile epics, equal projectives, equal stable ideals, equal stable isomorphism of objects, idempotence
/// and monotonicity. `membership` replaces is_member (fault injection); the intrinsic tests stay in use.
std::vector<CheckReport> sectile_closure_check(const AllowableClass& cls, const std::vector<Module>& universe,
                                               std::size_t budget = 100000,
                                               const MembershipPredicate& membership = nullptr);

enum class ClosureProperty { Retractile, Sectile };
/// Retractile: g∘f a class mono forces f one. Sectile: g∘f a class epi forces g one.
/// Exhaustive over composable universe pairs below budget, seeded sampling above.
CheckReport retractile_sectile_check(const AllowableClass& cls, const std::vector<Module>& universe,
                                     std::size_t budget = 100000, std::uint64_t seed = 0,
                                     ClosureProperty property = ClosureProperty::Retractile);

}  // namespace stabg
