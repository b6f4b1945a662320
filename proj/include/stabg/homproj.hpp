#pragma once

#include <optional>
#include <vector>

#include "stabg/decomp.hpp"
#include "stabg/module.hpp"

namespace stabg {

/// Simples, their projective covers and injective envelopes, matched by index (cached per algebra).
struct ProjectiveData {
  std::vector<Module> simples;
  std::vector<Module> projectives;  ///< projectives[j] has top simples[j]
  std::vector<Module> injectives;   ///< injectives[j] has socle simples[j]
  std::vector<std::size_t> end_dims;  ///< dim End(simples[j])
};
const ProjectiveData& projective_data(const AlgebraPtr& alg);

/// M / M·rad
Module top(const Module& m);
/// {m : m·rad = 0}
Module socle(const Module& m);

struct ProjectiveCover {
  Module module;
  ModuleHom epi;
  std::vector<std::size_t> summands;  ///< indices into projective_data().projectives
};
ProjectiveCover projective_cover(const Module& m);
/// Kernel of the projective cover, with its inclusion into the cover.
SubmoduleResult syzygy_inclusion(const Module& m);
Module syzygy(const Module& m);
bool is_projective(const Module& m);

struct InjectiveEnvelope {
  Module module;
  ModuleHom mono;
};
InjectiveEnvelope injective_envelope(const Module& m);
bool is_injective(const Module& m);

/// g: M -> P(N) with cover∘g = f, when f factors through a projective.
std::optional<ModuleHom> factors_through_projective(const ModuleHom& f);
/// Basis of the maps M -> N factoring through a projective.
std::vector<ModuleHom> projective_factoring_maps(const Module& m, const Module& n);
/// Span of {b∘a : a ∈ Hom(M,X), b ∈ Hom(X,N), X in objects}, as an echelon basis of vectorised matrices.
Subspace maps_through(const Module& m, const Module& n, const std::vector<Module>& objects);

struct StableHom {
  std::vector<ModuleHom> basis;  ///< representatives of a basis of the quotient
  std::size_t dim = 0;
};
StableHom stable_hom(const Module& m, const Module& n);

/// Solves h∘f - id_M ∈ S(M,M), f∘h - id_N ∈ S(N,N) for given subspace providers.
std::optional<ModuleHom> solve_quasi_inverse(const ModuleHom& f, const Subspace& s_mm, const Subspace& s_nn);
/// Same with a precomputed basis of Hom(N, M).
std::optional<ModuleHom> solve_quasi_inverse(const ModuleHom& f, const std::vector<ModuleHom>& homs_nm,
                                             const Subspace& s_mm, const Subspace& s_nn);
/// Basis of the maps M -> N factoring through a projective, as a subspace of vectorised matrices.
Subspace projective_factoring_subspace(const Module& m, const Module& n);
std::optional<ModuleHom> is_stable_equivalence(const ModuleHom& f);
bool stably_isomorphic(const Module& m, const Module& n);

struct Ext1 {
  std::size_t dim = 0;
  std::vector<ModuleHom> classes;  ///< maps ΩM -> N representing a basis of Ext¹(M, N)
  ProjectiveCover cover;
  SubmoduleResult omega;  ///< ΩM inside the cover
};
Ext1 ext1(const Module& m, const Module& n);

struct Extension {
  ShortExact sequence;  ///< 0 -> N -> Y -> M -> 0
  Vec coords;
};
Extension extension_from_class(const Module& m, const Module& n, const Vec& coords);
/// Same, reusing a computed Ext¹.
Extension extension_from_class(const Ext1& e, const Module& m, const Module& n, const Vec& coords);

}  // namespace stabg
