#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stabg {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;
using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);
Scalar inv_mod(Scalar a, Scalar p);

inline Scalar add_mod(Scalar a, Scalar b, Scalar p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return Scalar(s >= p ? s - p : s);
}
inline Scalar sub_mod(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : Scalar(std::uint64_t(a) + p - b); }
inline Scalar mul_mod(Scalar a, Scalar b, Scalar p) { return Scalar((std::uint64_t(a) * b) % p); }
inline Scalar neg_mod(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }

/// Dense matrix over F_p, row-major, entries in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Scalar p, std::size_t rows, std::size_t cols);

  static FpMatrix zero(Scalar p, std::size_t rows, std::size_t cols) { return FpMatrix(p, rows, cols); }
  static FpMatrix identity(Scalar p, std::size_t n);
  /// Reduces arbitrary integers mod p.
  static FpMatrix from_rows(Scalar p, const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);
  static FpMatrix from_row_vectors(Scalar p, const std::vector<Vec>& rows, std::size_t cols);
  static FpMatrix from_columns(Scalar p, const std::vector<Vec>& cols, std::size_t rows);

  Scalar p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v) { data_[r * cols_ + c] = v; }
  Scalar* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const Scalar* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
  const std::vector<Scalar>& data() const { return data_; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  Vec apply(const Vec& v) const;

  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix scaled(Scalar s) const;
  FpMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  FpMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  FpMatrix select_rows(const std::vector<std::size_t>& idx) const;
  FpMatrix select_cols(const std::vector<std::size_t>& idx) const;
  void paste(std::size_t r0, std::size_t c0, const FpMatrix& block);
  static FpMatrix hstack(const std::vector<FpMatrix>& blocks);
  static FpMatrix vstack(const std::vector<FpMatrix>& blocks);
  static FpMatrix block_diag(const std::vector<FpMatrix>& blocks);

  bool operator==(const FpMatrix& o) const = default;
  std::strong_ordering operator<=>(const FpMatrix& o) const;

  std::string to_string() const;

 private:
  Scalar p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const FpMatrix& m) { return os << m.to_string(); }

struct RrefResult {
  FpMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

struct SolveResult {
  FpMatrix particular;         ///< a.cols × b.cols
  std::vector<Vec> nullspace;  ///< basis of ker(a), reduced echelon
};

/// Solves a·x = b; nullopt when inconsistent.
std::optional<SolveResult> solve(const FpMatrix& a, const FpMatrix& b);
/// Basis of ker(m) in reduced echelon form.
std::vector<Vec> nullspace_basis(const FpMatrix& m);
/// Basis of the column space of m in reduced echelon form.
std::vector<Vec> image_basis(const FpMatrix& m);
/// Basis of {y : y·m = 0} in reduced echelon form.
std::vector<Vec> left_nullspace_basis(const FpMatrix& m);
std::optional<FpMatrix> inverse(const FpMatrix& m);

/// Reduced echelon basis of span(vectors), all of length n.
std::vector<Vec> echelon_basis(Scalar p, const std::vector<Vec>& vectors, std::size_t n);

/// A subspace of F_p^n kept in reduced echelon form, with membership and coordinates.
class Subspace {
 public:
  Subspace(Scalar p, std::size_t n) : p_(p), n_(n) {}
  Subspace(Scalar p, std::size_t n, const std::vector<Vec>& spanning);

  Scalar p() const { return p_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v modulo the subspace (zero iff v is a member).
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  /// Adds v; returns false when v already lies in the subspace.
  bool add(const Vec& v);
  /// Coordinates of a member with respect to basis(); nullopt for non-members.
  std::optional<Vec> coordinates(const Vec& v) const;
  /// Non-pivot coordinate positions: a basis of a complement.
  std::vector<std::size_t> complement_positions() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

 private:
  Scalar p_;
  std::size_t n_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Iterates all p^k coefficient vectors of length k in a fixed order.
class CoefficientCounter {
 public:
  CoefficientCounter(Scalar p, std::size_t k) : p_(p), v_(k, 0) {}
  const Vec& value() const { return v_; }
  /// Advances; returns false after the last vector.
  bool next();

 private:
  Scalar p_;
  Vec v_;
};

Vec linear_combination(Scalar p, const std::vector<Vec>& basis, const Vec& coeffs, std::size_t n);

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::vector<BigInt> row(std::size_t r) const;
  void append_row(const std::vector<BigInt>& row);

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithForm {
  std::vector<BigInt> diagonal;  ///< min(rows, cols) entries, d1 | d2 | ..., zeros last
  std::size_t rank = 0;
  IntMatrix u;  ///< rows × rows, unimodular
  IntMatrix v;  ///< cols × cols, unimodular; u·m·v = diag
  /// Nonzero invariant factors (the d list).
  std::vector<BigInt> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);

/// Z^free ⊕ Z/d1 ⊕ Z/d2 ⊕ ... with 1 < d1 | d2 | ...
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const AbelianGroup& o) const = default;
};

AbelianGroup cokernel_presentation(const IntMatrix& relations, std::size_t ngens);

/// Solves w·lattice = x over Z; nullopt when x is not in the row lattice.
std::optional<std::vector<BigInt>> lattice_solve(const IntMatrix& lattice, const std::vector<BigInt>& x);
/// Z-basis of {y : y·m = 0}.
std::vector<std::vector<BigInt>> integer_left_kernel(const IntMatrix& m);

}  // namespace stabg
