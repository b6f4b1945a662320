#pragma once

#include <memory>
#include <vector>

#include "stabg/algebra.hpp"

namespace stabg {

/// Right module over a FiniteAlgebra. The action of basis element e_i is the matrix A_i acting on
/// column vectors, m·e_i = A_i m, so A_{ab} = A_b A_a.
class Module {
 public:
  Module() = default;
  /// Validates sizes, the unit and the product on every basis pair.
  static Module create(AlgebraPtr alg, std::vector<FpMatrix> action);
  /// No validation; for actions derived from validated modules.
  static Module trusted(AlgebraPtr alg, std::vector<FpMatrix> action);

  const AlgebraPtr& algebra() const { return data_->alg; }
  Scalar p() const { return data_->alg->p(); }
  std::size_t dim() const { return data_->dim; }
  const FpMatrix& action(std::size_t i) const { return data_->action[i]; }
  const std::vector<FpMatrix>& actions() const { return data_->action; }
  /// Matrix of m -> m·a for an arbitrary algebra element.
  FpMatrix act(const Vec& a) const;

  bool valid() const { return data_ != nullptr; }
  bool operator==(const Module& o) const;

 private:
  struct Data {
    AlgebraPtr alg;
    std::size_t dim = 0;
    std::vector<FpMatrix> action;
  };
  std::shared_ptr<const Data> data_;
};

class ModuleHom {
 public:
  ModuleHom() = default;
  /// matrix is dim(target) × dim(source); the intertwining relation is validated.
  static ModuleHom create(Module source, Module target, FpMatrix matrix);
  static ModuleHom trusted(Module source, Module target, FpMatrix matrix);
  static ModuleHom identity(const Module& m);
  static ModuleHom zero(const Module& source, const Module& target);

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  const FpMatrix& matrix() const { return matrix_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const { return is_injective() && is_surjective(); }
  bool is_zero() const { return matrix_.is_zero(); }

  ModuleHom operator+(const ModuleHom& o) const;
  ModuleHom operator-(const ModuleHom& o) const;
  ModuleHom scaled(Scalar s) const;
  /// this ∘ g.
  ModuleHom after(const ModuleHom& g) const;

 private:
  Module source_, target_;
  FpMatrix matrix_;
};

/// g ∘ f.
inline ModuleHom compose(const ModuleHom& g, const ModuleHom& f) { return g.after(f); }

/// 0 -> X -f-> Y -g-> Z -> 0, validated.
struct ShortExact {
  ModuleHom f, g;
  static ShortExact create(ModuleHom f, ModuleHom g);
  const Module& left() const { return f.source(); }
  const Module& middle() const { return f.target(); }
  const Module& right() const { return g.target(); }
};

Module regular_module(const AlgebraPtr& alg);
Module zero_module(const AlgebraPtr& alg);
/// D(A) with the right action dual to left multiplication: the injective cogenerator.
Module coregular(const AlgebraPtr& alg);
/// The one-dimensional module k = A/rad(A) of a split local algebra; throws UnsupportedSemisimpleType otherwise.
Module trivial_module(const AlgebraPtr& alg);

/// Reduced-echelon basis of Hom(M, N), in row-major vectorised order of the matrix.
std::vector<ModuleHom> hom_space(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);
/// Linear combination of a hom basis.
ModuleHom combine(const std::vector<ModuleHom>& basis, const Vec& coeffs, const Module& source, const Module& target);

struct SubmoduleResult {
  Module module;
  ModuleHom inclusion;
};
struct QuotientModule {
  Module module;
  ModuleHom projection;
};

bool is_invariant(const Module& m, const Subspace& s);
/// Smallest submodule containing the vectors.
Subspace submodule_generated(const Module& m, const std::vector<Vec>& vectors);
/// Requires an invariant subspace.
SubmoduleResult submodule(const Module& m, const Subspace& s);
QuotientModule quotient(const Module& m, const Subspace& s);

SubmoduleResult kernel(const ModuleHom& f);
SubmoduleResult image(const ModuleHom& f);
QuotientModule cokernel(const ModuleHom& f);
/// The epimorphism onto the image, M -> im f.
ModuleHom corestrict_to_image(const ModuleHom& f, const SubmoduleResult& im);

struct DirectSum {
  Module module;
  std::vector<ModuleHom> injections;
  std::vector<ModuleHom> projections;
};
DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<Module>& parts);
/// Hom between direct sums given by a matrix of component homs block[j][i]: parts_i -> targets_j.
ModuleHom block_hom(const DirectSum& source, const DirectSum& target,
                    const std::vector<std::vector<ModuleHom>>& blocks);

struct Pushout {
  Module module;
  ModuleHom from_y, from_z;
};
/// Pushout of Y <-f- X -c-> Z.
Pushout pushout(const ModuleHom& f, const ModuleHom& c);

struct Pullback {
  Module module;
  ModuleHom to_y, to_z;
};
/// Pullback of Y -f-> W <-g- Z.
Pullback pullback(const ModuleHom& f, const ModuleHom& g);

/// All invariant subspaces, ordered by (dim, echelon basis). Throws CapExceeded past `cap` results.
std::vector<Subspace> submodules(const Module& m, std::size_t cap = 100000);

struct BaseChange {
  Module module;      ///< M / M·ker φ over the target of φ
  FpMatrix quotient;  ///< dim(result) × dim(M) projection of underlying spaces
};
BaseChange base_change(const Module& m, const AlgebraMorphism& phi);
ModuleHom base_change_hom(const ModuleHom& f, const AlgebraMorphism& phi);
Module restrict_module(const Module& n, const AlgebraMorphism& phi);
ModuleHom restrict_hom(const ModuleHom& f, const AlgebraMorphism& phi);

/// N ⊗_A B for an inclusion ι: A -> B with B = ⊕ ι(A)·b_i (a left-free basis).
Module induce(const Module& n, const AlgebraMorphism& inclusion, const std::vector<Vec>& left_basis);
ModuleHom induce_hom(const ModuleHom& f, const AlgebraMorphism& inclusion, const std::vector<Vec>& left_basis);

/// Dual module over the opposite algebra (the same algebra when commutative).
Module dual(const Module& m);
/// D(f): D(N) -> D(M).
ModuleHom dual_hom(const ModuleHom& f);

/// Basis change: the module with actions P A_i P^-1 together with the iso P: M -> result.
std::pair<Module, ModuleHom> transport(const Module& m, const FpMatrix& p);

}  // namespace stabg
