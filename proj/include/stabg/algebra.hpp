#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stabg/linalg.hpp"

namespace stabg {

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Finite-dimensional associative unital algebra over F_p given by structure constants:
/// e_i * e_j = sum_k c[i][j][k] e_k.
class FiniteAlgebra {
 public:
  /// mul[i][j] is the coordinate vector of e_i * e_j. Associativity and the unit are validated.
  static AlgebraPtr from_structure_constants(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit,
                                             std::vector<std::string> labels, std::string name = "");
  /// Same, without the O(dim^4) associativity check. For tables derived from validated data.
  static AlgebraPtr from_trusted_constants(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit,
                                           std::vector<std::string> labels, std::string name = "");

  Scalar p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  const Vec& unit() const { return unit_; }
  const Vec& basis_product(std::size_t i, std::size_t j) const { return mul_[i * dim_ + j]; }

  Vec basis_vector(std::size_t i) const;
  Vec zero() const { return Vec(dim_, 0); }
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec scale(const Vec& a, Scalar s) const;
  Vec power(const Vec& a, std::uint64_t e) const;

  /// Matrix of b -> a*b acting on coordinate columns.
  FpMatrix left_multiplication(const Vec& a) const;
  /// Matrix of b -> b*a acting on coordinate columns.
  FpMatrix right_multiplication(const Vec& a) const;

  bool is_commutative() const { return commutative_; }
  bool is_unit(const Vec& a) const;
  /// Basis indices that generate the algebra (together with the unit).
  /// Computed on first use.
  const std::vector<std::size_t>& generator_indices() const;

  std::string format_element(const Vec& a) const;
  /// Parses sums of labelled terms such as "1+x^2" or "2*x+y".
  Vec parse_element(const std::string& text) const;

  bool same_structure(const FiniteAlgebra& o) const;

 private:
  FiniteAlgebra() = default;
  static AlgebraPtr build(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit, std::vector<std::string> labels,
                          std::string name, bool validate);

  Scalar p_ = 2;
  std::size_t dim_ = 0;
  std::vector<Vec> mul_;
  Vec unit_;
  std::vector<std::string> labels_;
  std::string name_;
  bool commutative_ = true;
  mutable std::once_flag generators_once_;
  mutable std::vector<std::size_t> generators_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

AlgebraPtr trunc_poly(Scalar p, std::size_t n);
AlgebraPtr exterior(Scalar p, std::size_t g);
AlgebraPtr field(Scalar p);
/// k[x_1..x_g]/(x_1..x_g)^2, the local algebra with radical square zero.
AlgebraPtr square_zero(Scalar p, std::size_t g);
/// Dispatch by preset name: trunc_poly(p,n), exterior(p,g), field(p), square_zero(p,g).
AlgebraPtr preset(const std::string& name, const std::vector<long long>& params);

AlgebraPtr opposite(const AlgebraPtr& alg);

/// Two-sided ideal with a reduced echelon basis.
struct Ideal {
  AlgebraPtr algebra;
  std::vector<Vec> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Validates closure; throws InputError if the span is not a two-sided ideal.
Ideal make_ideal(const AlgebraPtr& alg, const std::vector<Vec>& spanning);
Ideal ideal_generated(const AlgebraPtr& alg, const std::vector<Vec>& elements);
bool is_nilpotent_ideal(const Ideal& ideal);
Ideal jacobson_radical(const AlgebraPtr& alg);

/// Radical of the matrix algebra spanned by `basis` (n×n matrices closed under product).
/// Returned vectors are coordinates with respect to `basis`.
std::vector<Vec> matrix_algebra_radical(Scalar p, const std::vector<FpMatrix>& basis);

class AlgebraMorphism {
 public:
  /// matrix is dim(target) × dim(source); unit and products are validated.
  static AlgebraMorphism create(AlgebraPtr source, AlgebraPtr target, FpMatrix matrix);
  static AlgebraMorphism identity(const AlgebraPtr& alg);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const FpMatrix& matrix() const { return matrix_; }
  bool surjective() const { return surjective_; }
  bool injective() const { return injective_; }
  Vec apply(const Vec& a) const { return matrix_.apply(a); }
  /// Some preimage of a target element (requires it to be in the image).
  Vec preimage(const Vec& b) const;

 private:
  AlgebraPtr source_, target_;
  FpMatrix matrix_;
  bool surjective_ = false;
  bool injective_ = false;
};

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);

struct SubalgebraResult {
  AlgebraPtr algebra;
  AlgebraMorphism inclusion;
};
SubalgebraResult subalgebra_generated(const AlgebraPtr& alg, const std::vector<Vec>& elements);

struct QuotientResult {
  AlgebraPtr algebra;
  AlgebraMorphism projection;
};
QuotientResult quotient_by_ideal(const Ideal& ideal);
Ideal kernel_ideal(const AlgebraMorphism& f);

struct UnitGroup {
  AbelianGroup structure;
  std::vector<Vec> generators;  ///< one per invariant factor, same order as structure.torsion
  std::size_t order = 0;
};

/// Unit group of a commutative algebra by enumeration; throws NotCommutative.
UnitGroup unit_group(const AlgebraPtr& alg, std::size_t element_cap = 1u << 20);
/// True when `gens` are units of the stated orders generating a subgroup of size equal to their product,
/// and that product is the total number of units.
bool is_unit_basis(const AlgebraPtr& alg, const std::vector<Vec>& gens, const std::vector<BigInt>& orders);

enum class Side { Right, Left };

/// Elements b_1..b_r with B = (+) b_i·A (Side::Right) or (+) A·b_i (Side::Left); nullopt when not free.
std::optional<std::vector<Vec>> is_free_over_subalgebra(const AlgebraMorphism& inclusion, Side side = Side::Right);

/// True when alg/rad(alg) is one-dimensional (a local algebra with residue field F_p).
bool is_split_local(const AlgebraPtr& alg);

}  // namespace stabg
