#include "stabg/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "stabg/errors.hpp"

namespace stabg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar inv_mod(Scalar a, Scalar p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw InputError("element not invertible mod p");
  if (t < 0) t += p;
  return Scalar(t);
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(Scalar p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(Scalar p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(Scalar p, const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      long long v = rows[r][c] % static_cast<long long>(p);
      if (v < 0) v += p;
      m.set(r, c, Scalar(v));
    }
  }
  return m;
}

FpMatrix FpMatrix::from_row_vectors(Scalar p, const std::vector<Vec>& rows, std::size_t cols) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("row vector length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row_ptr(r));
  }
  return m;
}

FpMatrix FpMatrix::from_columns(Scalar p, const std::vector<Vec>& cols, std::size_t rows) {
  FpMatrix m(p, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionMismatch("column vector length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Vec FpMatrix::row(std::size_t r) const { return Vec(row_ptr(r), row_ptr(r) + cols_); }

Vec FpMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vec FpMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const Scalar* row = row_ptr(r);
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += std::uint64_t(row[c]) * v[c];
      if (acc >= (1ull << 62)) acc %= p_;
    }
    out[r] = Scalar(acc % p_);
  }
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product size mismatch");
  FpMatrix out(p_, rows_, o.cols_);
  if (p_ == 2) {
    for (std::size_t r = 0; r < rows_; ++r) {
      Scalar* dst = out.row_ptr(r);
      const Scalar* a = row_ptr(r);
      for (std::size_t k = 0; k < cols_; ++k) {
        if (!a[k]) continue;
        const Scalar* b = o.row_ptr(k);
        for (std::size_t c = 0; c < o.cols_; ++c) dst[c] ^= b[c];
      }
    }
    return out;
  }
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    const Scalar* a = row_ptr(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!a[k]) continue;
      const Scalar* b = o.row_ptr(k);
      for (std::size_t c = 0; c < o.cols_; ++c) acc[c] = (acc[c] + std::uint64_t(a[k]) * b[c]) % p_;
    }
    Scalar* dst = out.row_ptr(r);
    for (std::size_t c = 0; c < o.cols_; ++c) dst[c] = Scalar(acc[c]);
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum size mismatch");
  FpMatrix out(p_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], o.data_[i], p_);
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference size mismatch");
  FpMatrix out(p_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], o.data_[i], p_);
  return out;
}

FpMatrix FpMatrix::scaled(Scalar s) const {
  FpMatrix out(p_, rows_, cols_);
  s %= p_;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = mul_mod(data_[i], s, p_);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

FpMatrix FpMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("submatrix out of range");
  FpMatrix out(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out.set(r, c, at(r0 + r, c0 + c));
  return out;
}

FpMatrix FpMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  FpMatrix out(p_, idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r) std::copy(row_ptr(idx[r]), row_ptr(idx[r]) + cols_, out.row_ptr(r));
  return out;
}

FpMatrix FpMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  FpMatrix out(p_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out.set(r, c, at(r, idx[c]));
  return out;
}

void FpMatrix::paste(std::size_t r0, std::size_t c0, const FpMatrix& block) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw DimensionMismatch("paste out of range");
  for (std::size_t r = 0; r < block.rows_; ++r)
    std::copy(block.row_ptr(r), block.row_ptr(r) + block.cols_, row_ptr(r0 + r) + c0);
}

FpMatrix FpMatrix::hstack(const std::vector<FpMatrix>& blocks) {
  if (blocks.empty()) return FpMatrix();
  std::size_t rows = blocks[0].rows_, cols = 0;
  for (const auto& b : blocks) {
    if (b.rows_ != rows) throw DimensionMismatch("hstack row mismatch");
    cols += b.cols_;
  }
  FpMatrix out(blocks[0].p_, rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    out.paste(0, c0, b);
    c0 += b.cols_;
  }
  return out;
}

FpMatrix FpMatrix::vstack(const std::vector<FpMatrix>& blocks) {
  if (blocks.empty()) return FpMatrix();
  std::size_t cols = blocks[0].cols_, rows = 0;
  for (const auto& b : blocks) {
    if (b.cols_ != cols) throw DimensionMismatch("vstack column mismatch");
    rows += b.rows_;
  }
  FpMatrix out(blocks[0].p_, rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    out.paste(r0, 0, b);
    r0 += b.rows_;
  }
  return out;
}

FpMatrix FpMatrix::block_diag(const std::vector<FpMatrix>& blocks) {
  if (blocks.empty()) return FpMatrix();
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows_;
    cols += b.cols_;
  }
  FpMatrix out(blocks[0].p_, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    out.paste(r0, c0, b);
    r0 += b.rows_;
    c0 += b.cols_;
  }
  return out;
}

std::strong_ordering FpMatrix::operator<=>(const FpMatrix& o) const {
  if (auto c = rows_ <=> o.rows_; c != 0) return c;
  if (auto c = cols_ <=> o.cols_; c != 0) return c;
  return data_ <=> o.data_;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// In-place reduction of m to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(FpMatrix& m) {
  const Scalar p = m.p();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m.at(i, c)) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(m.row_ptr(piv), m.row_ptr(piv) + cols, m.row_ptr(r));
    Scalar* prow = m.row_ptr(r);
    if (p == 2) {
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || !m.at(i, c)) continue;
        Scalar* row = m.row_ptr(i);
        for (std::size_t j = c; j < cols; ++j) row[j] ^= prow[j];
      }
    } else {
      Scalar inv = inv_mod(prow[c], p);
      for (std::size_t j = c; j < cols; ++j) prow[j] = mul_mod(prow[j], inv, p);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r) continue;
        Scalar f = m.at(i, c);
        if (!f) continue;
        Scalar* row = m.row_ptr(i);
        for (std::size_t j = c; j < cols; ++j) row[j] = sub_mod(row[j], mul_mod(f, prow[j], p), p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RrefResult rref(const FpMatrix& m) {
  RrefResult res;
  res.reduced = m;
  res.pivots = rref_in_place(res.reduced);
  res.rank = res.pivots.size();
  return res;
}

std::size_t rank(const FpMatrix& m) {
  FpMatrix copy = m;
  return rref_in_place(copy).size();
}

std::vector<Vec> nullspace_basis(const FpMatrix& m) {
  const Scalar p = m.p();
  FpMatrix red = m;
  auto pivots = rref_in_place(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = neg_mod(red.at(i, f), p);
    basis.push_back(std::move(v));
  }
  return echelon_basis(p, basis, m.cols());
}

std::vector<Vec> image_basis(const FpMatrix& m) {
  std::vector<Vec> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return echelon_basis(m.p(), cols, m.rows());
}

std::vector<Vec> left_nullspace_basis(const FpMatrix& m) { return nullspace_basis(m.transpose()); }

std::vector<Vec> echelon_basis(Scalar p, const std::vector<Vec>& vectors, std::size_t n) {
  if (vectors.empty()) return {};
  FpMatrix m = FpMatrix::from_row_vectors(p, vectors, n);
  auto pivots = rref_in_place(m);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

std::optional<SolveResult> solve(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: a.rows != b.rows");
  const Scalar p = a.p();
  FpMatrix aug = FpMatrix::hstack({a, b});
  if (a.rows() == 0) aug = FpMatrix(p, 0, a.cols() + b.cols());
  auto pivots = rref_in_place(aug);
  SolveResult res;
  res.particular = FpMatrix(p, a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) res.particular.set(pivots[i], c, aug.at(i, a.cols() + c));
  }
  res.nullspace = nullspace_basis(a);
  return res;
}

std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  FpMatrix aug = FpMatrix::hstack({m, FpMatrix::identity(m.p(), n)});
  if (n == 0) return FpMatrix(m.p(), 0, 0);
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.submatrix(0, n, n, n);
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Scalar p, std::size_t n, const std::vector<Vec>& spanning) : p_(p), n_(n) {
  basis_ = echelon_basis(p, spanning, n);
  for (const auto& v : basis_)
    for (std::size_t c = 0; c < n; ++c)
      if (v[c]) {
        pivots_.push_back(c);
        break;
      }
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Scalar f = r[pivots_[i]];
    if (!f) continue;
    const Vec& b = basis_[i];
    for (std::size_t c = pivots_[i]; c < n_; ++c) r[c] = sub_mod(r[c], mul_mod(f, b[c], p_), p_);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
}

bool Subspace::add(const Vec& v) {
  if (contains(v)) return false;
  std::vector<Vec> span = basis_;
  span.push_back(v);
  *this = Subspace(p_, n_, span);
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec coords(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) coords[i] = v[pivots_[i]];
  return coords;
}

std::vector<std::size_t> Subspace::complement_positions() const {
  std::vector<bool> piv(n_, false);
  for (auto c : pivots_) piv[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < n_; ++c)
    if (!piv[c]) out.push_back(c);
  return out;
}

bool CoefficientCounter::next() {
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (++v_[i] < p_) return true;
    v_[i] = 0;
  }
  return false;
}

Vec linear_combination(Scalar p, const std::vector<Vec>& basis, const Vec& coeffs, std::size_t n) {
  Vec out(n, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!coeffs[i]) continue;
    for (std::size_t c = 0; c < n; ++c) out[c] = add_mod(out[c], mul_mod(coeffs[i], basis[i][c], p), p);
  }
  return out;
}

// ---------------------------------------------------------------------------

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const {
  return std::vector<BigInt>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void IntMatrix::append_row(const std::vector<BigInt>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DimensionMismatch("append_row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("integer matrix product size mismatch");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out.at(r, c) += a * o.at(k, c);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}
// row a -= q * row b
void row_axpy(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& q) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.at(b, c) != 0) m.at(a, c) -= q * m.at(b, c);
}
void col_axpy(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& q) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m.at(r, b) != 0) m.at(r, a) -= q * m.at(r, b);
}

}  // namespace

std::vector<BigInt> SmithForm::invariant_factors() const {
  std::vector<BigInt> out;
  for (const auto& d : diagonal)
    if (d != 0) out.push_back(d);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows), v = IntMatrix::identity(cols);
  const std::size_t n = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Choose the entry of least absolute value in the trailing block as pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a.at(i, j) != 0 && (!found || abs(a.at(i, j)) < best)) {
          best = abs(a.at(i, j));
          pr = i;
          pc = j;
          found = true;
        }
    if (!found) break;
    swap_rows(a, t, pr);
    swap_rows(u, t, pr);
    swap_cols(a, t, pc);
    swap_cols(v, t, pc);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a.at(i, t) == 0) continue;
        BigInt q = a.at(i, t) / a.at(t, t);
        row_axpy(a, i, t, q);
        row_axpy(u, i, t, q);
        if (a.at(i, t) != 0) {
          clean = false;
          swap_rows(a, t, i);
          swap_rows(u, t, i);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a.at(t, j) == 0) continue;
        BigInt q = a.at(t, j) / a.at(t, t);
        col_axpy(a, j, t, q);
        col_axpy(v, j, t, q);
        if (a.at(t, j) != 0) {
          clean = false;
          swap_cols(a, t, j);
          swap_cols(v, t, j);
        }
      }
      if (!clean) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            row_axpy(a, t, i, BigInt(-1));
            row_axpy(u, t, i, BigInt(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a.at(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a.at(t, c) = -a.at(t, c);
      for (std::size_t c = 0; c < rows; ++c) u.at(t, c) = -u.at(t, c);
    }
  }
  SmithForm res;
  res.rank = t;
  res.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.diagonal[i] = a.at(i, i);
  res.u = std::move(u);
  res.v = std::move(v);
  return res;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a.at(s, k) == 0) ++s;
      if (s == n) return 0;
      swap_rows(a, k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank > 1) os << "^" << free_rank;
  }
  return os.str();
}

AbelianGroup cokernel_presentation(const IntMatrix& relations, std::size_t ngens) {
  if (relations.rows() > 0 && relations.cols() != ngens) throw DimensionMismatch("relations.cols != ngens");
  AbelianGroup g;
  if (relations.rows() == 0) {
    g.free_rank = ngens;
    return g;
  }
  SmithForm s = smith_normal_form(relations);
  g.free_rank = ngens - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal[i] != 1) g.torsion.push_back(s.diagonal[i]);
  return g;
}

std::optional<std::vector<BigInt>> lattice_solve(const IntMatrix& lattice, const std::vector<BigInt>& x) {
  const std::size_t k = lattice.rows(), n = x.size();
  if (k == 0) {
    for (const auto& e : x)
      if (e != 0) return std::nullopt;
    return std::vector<BigInt>{};
  }
  if (lattice.cols() != n) throw DimensionMismatch("lattice_solve length mismatch");
  SmithForm s = smith_normal_form(lattice);
  std::vector<BigInt> z(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != 0) z[c] += x[i] * s.v.at(i, c);
  std::vector<BigInt> w1(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < s.rank) {
      if (z[i] % s.diagonal[i] != 0) return std::nullopt;
      w1[i] = z[i] / s.diagonal[i];
    } else if (z[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> w(k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < s.rank; ++i)
      if (w1[i] != 0) w[c] += w1[i] * s.u.at(i, c);
  return w;
}

std::vector<std::vector<BigInt>> integer_left_kernel(const IntMatrix& m) {
  if (m.rows() == 0) return {};
  SmithForm s = smith_normal_form(m);
  std::vector<std::vector<BigInt>> out;
  for (std::size_t i = s.rank; i < m.rows(); ++i) out.push_back(s.u.row(i));
  return out;
}

}  // namespace stabg
