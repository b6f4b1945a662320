#pragma once

#include <optional>
#include <vector>

#include "stabg/module.hpp"

namespace stabg {

/// End(M) as an abstract algebra, with e_i·e_j = basis[i] ∘ basis[j].
struct EndAlgebra {
  AlgebraPtr algebra;
  std::vector<FpMatrix> basis;  ///< matrices on M, one per algebra basis element
  FpMatrix matrix_of(const Vec& coords) const;
};
EndAlgebra endomorphism_algebra(const Module& m);

/// A nontrivial idempotent endomorphism of M, if any.
std::optional<FpMatrix> find_idempotent(const Module& m);
/// Throws InputError on the zero module.
bool is_indecomposable(const Module& m);

/// Iso between two indecomposable modules, via g∘f invertible for basis homs f, g.
std::optional<ModuleHom> indecomposable_iso(const Module& m, const Module& n);

/// Minimal action tuple over all basis changes when GL(dim) is small; otherwise M itself.
/// Returns the representative and an iso M -> representative.
std::pair<Module, ModuleHom> canonical_form(const Module& m);
/// Cheap isomorphism invariants: dim, radical and socle series, dim End.
std::vector<std::size_t> module_invariants(const Module& m);
/// Total order used for deterministic listings (dim first).
bool canonical_less(const Module& a, const Module& b);

struct Decomposition {
  Module module;
  std::vector<Module> parts;  ///< indecomposable summands in canonical order, repeated by multiplicity
  std::vector<std::pair<Module, std::size_t>> summands;
  ModuleHom to_sum;    ///< M -> ⊕ parts
  ModuleHom from_sum;  ///< ⊕ parts -> M
};
Decomposition krull_schmidt(const Module& m);

std::optional<ModuleHom> is_isomorphic(const Module& m, const Module& n);

/// Index of the first list member isomorphic to the indecomposable m.
std::optional<std::size_t> find_isomorphic(const Module& m, const std::vector<Module>& list);

/// M·rad(A) and the series M ⊇ M·J ⊇ M·J² ⊇ ...
Subspace radical_subspace(const Module& m);
/// {m : m·J = 0}
Subspace socle_subspace(const Module& m);

/// Simple modules up to iso, in canonical order. With require_split, throws UnsupportedSemisimpleType
/// when some simple has endomorphism ring larger than F_p.
std::vector<Module> simples(const AlgebraPtr& alg, bool require_split = true);

struct EnumerationResult {
  std::vector<Module> modules;  ///< one per iso class, canonical order
  std::size_t candidates = 0;   ///< extensions examined
};
/// Indecomposables of dimension <= max_dim, built as extensions of smaller ones by simples.
EnumerationResult enumerate_indecomposables(const AlgebraPtr& alg, std::size_t max_dim, std::size_t cap = 1u << 20);

/// Middle term of the extension 0 -> S -> M -> Q -> 0 given by the cocycle (D_i) on basis elements.
Module extension_module(const Module& s, const Module& q, const std::vector<FpMatrix>& cocycle);

/// Cocycle space Z¹ and a complement of the coboundaries, both as vectors of stacked D_i entries.
struct CocycleData {
  std::vector<Vec> cocycles;
  std::vector<Vec> class_basis;  ///< represents Ext¹(Q, S)
  std::vector<FpMatrix> unpack(const Vec& v) const;
  std::size_t rows = 0, cols = 0, count = 0;
  Scalar p = 2;
};
CocycleData cocycle_data(const Module& s, const Module& q);

}  // namespace stabg
