#include "stabg/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "stabg/errors.hpp"

namespace stabg {

namespace {

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

// Span closure of `start` under right multiplication by `gens`.
Subspace closure_right(const FiniteAlgebra& alg, Subspace span, const std::vector<Vec>& gens) {
  bool grew = true;
  while (grew) {
    grew = false;
    auto basis = span.basis();
    for (const auto& v : basis)
      for (const auto& g : gens)
        if (span.add(alg.multiply(v, g))) grew = true;
  }
  return span;
}

std::vector<std::size_t> compute_generators(const FiniteAlgebra& alg) {
  std::vector<std::size_t> gens;
  std::vector<Vec> gen_vecs;
  Subspace sub(alg.p(), alg.dim(), {alg.unit()});
  for (std::size_t i = 0; i < alg.dim() && sub.dim() < alg.dim(); ++i) {
    Vec e = alg.basis_vector(i);
    if (sub.contains(e)) continue;
    gens.push_back(i);
    gen_vecs.push_back(e);
    sub = closure_right(alg, sub, gen_vecs);
  }
  return gens;
}

}  // namespace

AlgebraPtr FiniteAlgebra::from_structure_constants(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit,
                                                   std::vector<std::string> labels, std::string name) {
  return build(p, std::move(mul), std::move(unit), std::move(labels), std::move(name), true);
}

AlgebraPtr FiniteAlgebra::from_trusted_constants(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit,
                                                 std::vector<std::string> labels, std::string name) {
  return build(p, std::move(mul), std::move(unit), std::move(labels), std::move(name), false);
}

AlgebraPtr FiniteAlgebra::build(Scalar p, std::vector<std::vector<Vec>> mul, Vec unit, std::vector<std::string> labels,
                                std::string name, bool validate) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  const std::size_t n = mul.size();
  if (n == 0) throw InputError("algebra dimension must be positive");
  if (unit.size() != n) throw DimensionMismatch("unit vector length differs from dimension");
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (labels.size() != n) throw DimensionMismatch("label count differs from dimension");
  std::shared_ptr<FiniteAlgebra> alg(new FiniteAlgebra());
  alg->p_ = p;
  alg->dim_ = n;
  alg->labels_ = std::move(labels);
  alg->name_ = std::move(name);
  for (auto& x : unit) x %= p;
  alg->unit_ = std::move(unit);
  alg->mul_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mul[i].size() != n) throw DimensionMismatch("structure constant table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (mul[i][j].size() != n) throw DimensionMismatch("structure constant vector length mismatch");
      Vec v = mul[i][j];
      for (auto& x : v) x %= p;
      alg->mul_.push_back(std::move(v));
    }
  }
  for (std::size_t i = 0; i < n && validate; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = alg->multiply(alg->basis_product(i, j), alg->basis_vector(k));
        Vec rhs = alg->multiply(alg->basis_vector(i), alg->basis_product(j, k));
        if (lhs != rhs) throw NonAssociative(i, j, k);
      }
  for (std::size_t i = 0; i < n && validate; ++i) {
    Vec e = alg->basis_vector(i);
    if (alg->multiply(alg->unit_, e) != e || alg->multiply(e, alg->unit_) != e) throw BadUnit(i);
  }
  alg->commutative_ = true;
  for (std::size_t i = 0; i < n && alg->commutative_; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (alg->basis_product(i, j) != alg->basis_product(j, i)) {
        alg->commutative_ = false;
        break;
      }
  return alg;
}

const std::vector<std::size_t>& FiniteAlgebra::generator_indices() const {
  std::call_once(generators_once_, [this] { generators_ = compute_generators(*this); });
  return generators_;
}

Vec FiniteAlgebra::basis_vector(std::size_t i) const {
  Vec v(dim_, 0);
  v[i] = 1;
  return v;
}

Vec FiniteAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!b[j]) continue;
      Scalar f = mul_mod(a[i], b[j], p_);
      const Vec& c = mul_[i * dim_ + j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (c[k]) out[k] = add_mod(out[k], mul_mod(f, c[k], p_), p_);
    }
  }
  return out;
}

Vec FiniteAlgebra::add(const Vec& a, const Vec& b) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = add_mod(a[i], b[i], p_);
  return out;
}

Vec FiniteAlgebra::sub(const Vec& a, const Vec& b) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = sub_mod(a[i], b[i], p_);
  return out;
}

Vec FiniteAlgebra::scale(const Vec& a, Scalar s) const {
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = mul_mod(a[i], s % p_, p_);
  return out;
}

Vec FiniteAlgebra::power(const Vec& a, std::uint64_t e) const {
  Vec result = unit_, base = a;
  while (e) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

FpMatrix FiniteAlgebra::left_multiplication(const Vec& a) const {
  FpMatrix m(p_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = multiply(a, basis_vector(j));
    for (std::size_t k = 0; k < dim_; ++k) m.set(k, j, col[k]);
  }
  return m;
}

FpMatrix FiniteAlgebra::right_multiplication(const Vec& a) const {
  FpMatrix m(p_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = multiply(basis_vector(j), a);
    for (std::size_t k = 0; k < dim_; ++k) m.set(k, j, col[k]);
  }
  return m;
}

bool FiniteAlgebra::is_unit(const Vec& a) const { return rank(left_multiplication(a)) == dim_; }

std::string FiniteAlgebra::format_element(const Vec& a) const {
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    if (!out.empty()) out += "+";
    if (a[i] != 1) out += std::to_string(a[i]) + "*";
    out += labels_[i];
  }
  return out.empty() ? "0" : out;
}

Vec FiniteAlgebra::parse_element(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty algebra element");
  Vec out(dim_, 0);
  if (s.front() == '[') {
    if (s.back() != ']') throw InputError("unterminated coordinate vector: " + text);
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
      if (i >= dim_) throw InputError("too many coordinates in " + text);
      long long v = std::stoll(tok) % static_cast<long long>(p_);
      out[i++] = Scalar(v < 0 ? v + p_ : v);
    }
    if (i != dim_) throw InputError("wrong number of coordinates in " + text);
    return out;
  }
  if (s == "0") return out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    long long coeff = 1;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coeff = std::stoll(term.substr(0, star));
      term = term.substr(star + 1);
    }
    auto it = std::find(labels_.begin(), labels_.end(), term);
    if (it == labels_.end()) {
      bool numeric = !term.empty() && std::all_of(term.begin(), term.end(), [](char c) { return std::isdigit(c); });
      if (!numeric) throw InputError("unknown basis label '" + term + "'");
      // A bare integer is a multiple of the unit.
      long long c = (coeff * std::stoll(term)) % static_cast<long long>(p_);
      if (negative) c = -c;
      if (c < 0) c += p_;
      out = add(out, scale(unit_, Scalar(c)));
      continue;
    }
    long long c = coeff % static_cast<long long>(p_);
    if (negative) c = -c;
    if (c < 0) c += p_;
    std::size_t idx = std::size_t(it - labels_.begin());
    out[idx] = add_mod(out[idx], Scalar(c), p_);
  }
  return out;
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& o) const {
  return p_ == o.p_ && dim_ == o.dim_ && unit_ == o.unit_ && mul_ == o.mul_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

// ---------------------------------------------------------------------------
// Presets.

AlgebraPtr trunc_poly(Scalar p, std::size_t n) {
  if (n < 1) throw InputError("trunc_poly needs n >= 1");
  std::vector<std::vector<Vec>> mul(n, std::vector<Vec>(n, Vec(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) mul[i][j][i + j] = 1;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  Vec unit(n, 0);
  unit[0] = 1;
  return FiniteAlgebra::from_structure_constants(p, std::move(mul), std::move(unit), std::move(labels),
                                                 "trunc_poly:" + std::to_string(p) + ":" + std::to_string(n));
}

namespace {
std::string generator_name(std::size_t i, std::size_t g) {
  static const char* letters[] = {"x", "y", "z", "w"};
  if (g <= 4) return letters[i];
  return "x" + std::to_string(i + 1);
}
}  // namespace

AlgebraPtr exterior(Scalar p, std::size_t g) {
  if (g < 1 || g > 10) throw InputError("exterior needs 1 <= g <= 10");
  const std::size_t n = std::size_t(1) << g;
  std::vector<std::vector<Vec>> mul(n, std::vector<Vec>(n, Vec(n, 0)));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s & t) continue;
      // Sign of merging the sorted generator lists s and t.
      std::size_t swaps = 0;
      for (std::size_t i = 0; i < g; ++i)
        if (t & (std::size_t(1) << i))
          for (std::size_t j = i + 1; j < g; ++j)
            if (s & (std::size_t(1) << j)) ++swaps;
      mul[s][t][s | t] = (swaps % 2 == 0) ? 1 : p - 1;
    }
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < n; ++s) {
    std::string l;
    for (std::size_t i = 0; i < g; ++i)
      if (s & (std::size_t(1) << i)) l += generator_name(i, g);
    labels.push_back(l.empty() ? "1" : l);
  }
  Vec unit(n, 0);
  unit[0] = 1;
  return FiniteAlgebra::from_structure_constants(p, std::move(mul), std::move(unit), std::move(labels),
                                                 "exterior:" + std::to_string(p) + ":" + std::to_string(g));
}

AlgebraPtr field(Scalar p) {
  return FiniteAlgebra::from_structure_constants(p, {{Vec{1}}}, Vec{1}, {"1"}, "field:" + std::to_string(p));
}

AlgebraPtr square_zero(Scalar p, std::size_t g) {
  if (g < 1) throw InputError("square_zero needs g >= 1");
  const std::size_t n = g + 1;
  std::vector<std::vector<Vec>> mul(n, std::vector<Vec>(n, Vec(n, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    mul[0][i][i] = 1;
    mul[i][0][i] = 1;
  }
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 0; i < g; ++i) labels.push_back(generator_name(i, g));
  Vec unit(n, 0);
  unit[0] = 1;
  return FiniteAlgebra::from_structure_constants(p, std::move(mul), std::move(unit), std::move(labels),
                                                 "square_zero:" + std::to_string(p) + ":" + std::to_string(g));
}

AlgebraPtr preset(const std::string& name, const std::vector<long long>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw InputError("preset " + name + " expects " + std::to_string(k) + " parameters");
    for (auto v : params)
      if (v < 1) throw InputError("preset parameters must be positive");
  };
  if (name == "trunc_poly") {
    need(2);
    return trunc_poly(Scalar(params[0]), std::size_t(params[1]));
  }
  if (name == "exterior") {
    need(2);
    return exterior(Scalar(params[0]), std::size_t(params[1]));
  }
  if (name == "field") {
    need(1);
    return field(Scalar(params[0]));
  }
  if (name == "square_zero") {
    need(2);
    return square_zero(Scalar(params[0]), std::size_t(params[1]));
  }
  throw InputError("unknown preset '" + name + "'");
}

namespace {
AlgebraPtr build_opposite(const AlgebraPtr& alg) {
  const std::size_t n = alg->dim();
  std::vector<std::vector<Vec>> mul(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = alg->basis_product(j, i);
  return FiniteAlgebra::from_trusted_constants(alg->p(), std::move(mul), alg->unit(), alg->labels(),
                                                 alg->name().empty() ? "" : "op(" + alg->name() + ")");
}
}  // namespace

AlgebraPtr opposite(const AlgebraPtr& alg) {
  if (alg->is_commutative()) return alg;
  // memoised both ways so that op(op(A)) is A itself
  struct Entry {
    std::weak_ptr<const FiniteAlgebra> key;
    AlgebraPtr owned;
    std::weak_ptr<const FiniteAlgebra> other;
  };
  static std::mutex mu;
  static std::map<const FiniteAlgebra*, Entry> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alg.get());
  if (it != cache.end() && !it->second.key.expired()) {
    if (it->second.owned) return it->second.owned;
    if (auto o = it->second.other.lock()) return o;
  }
  AlgebraPtr op = build_opposite(alg);
  cache[alg.get()] = Entry{alg, op, {}};
  cache[op.get()] = Entry{op, nullptr, alg};
  return op;
}

// ---------------------------------------------------------------------------
// Ideals and the radical.

Ideal make_ideal(const AlgebraPtr& alg, const std::vector<Vec>& spanning) {
  Subspace span(alg->p(), alg->dim(), spanning);
  for (const auto& v : span.basis())
    for (std::size_t i = 0; i < alg->dim(); ++i) {
      Vec e = alg->basis_vector(i);
      if (!span.contains(alg->multiply(v, e)) || !span.contains(alg->multiply(e, v)))
        throw InputError("span is not a two-sided ideal");
    }
  return Ideal{alg, span.basis()};
}

Ideal ideal_generated(const AlgebraPtr& alg, const std::vector<Vec>& elements) {
  Subspace span(alg->p(), alg->dim(), elements);
  bool grew = true;
  while (grew) {
    grew = false;
    auto basis = span.basis();
    for (const auto& v : basis)
      for (std::size_t i = 0; i < alg->dim(); ++i) {
        Vec e = alg->basis_vector(i);
        if (span.add(alg->multiply(v, e))) grew = true;
        if (span.add(alg->multiply(e, v))) grew = true;
      }
  }
  return Ideal{alg, span.basis()};
}

bool is_nilpotent_ideal(const Ideal& ideal) {
  const auto& alg = *ideal.algebra;
  // I^k as a span; nilpotent iff it reaches zero within dim+1 steps.
  std::vector<Vec> power = ideal.basis;
  for (std::size_t step = 0; step <= alg.dim() + 1; ++step) {
    if (power.empty()) return true;
    std::vector<Vec> next;
    for (const auto& a : power)
      for (const auto& b : ideal.basis) next.push_back(alg.multiply(a, b));
    power = echelon_basis(alg.p(), next, alg.dim());
  }
  return power.empty();
}

namespace {

using U64Matrix = std::vector<std::uint64_t>;

U64Matrix mul_mod_u64(const U64Matrix& a, const U64Matrix& b, std::size_t n, std::uint64_t m) {
  U64Matrix c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t x = a[i * n + k];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % m;
    }
  return c;
}

// (Tr(lift(c)^(p^i)) mod p^(i+1)) / p^i, reduced mod p.
Scalar trace_functional(const FpMatrix& c, Scalar p, std::size_t i) {
  const std::size_t n = c.rows();
  std::uint64_t pi = 1;
  for (std::size_t t = 0; t < i; ++t) pi *= p;
  const std::uint64_t m = pi * p;
  U64Matrix base(c.data().begin(), c.data().end());
  U64Matrix result(n * n, 0);
  for (std::size_t d = 0; d < n; ++d) result[d * n + d] = 1 % m;
  std::uint64_t e = pi;
  while (e) {
    if (e & 1) result = mul_mod_u64(result, base, n, m);
    e >>= 1;
    if (e) base = mul_mod_u64(base, base, n, m);
  }
  std::uint64_t tr = 0;
  for (std::size_t d = 0; d < n; ++d) tr = (tr + result[d * n + d]) % m;
  if (tr % pi != 0) throw std::logic_error("trace functional: divisibility invariant violated");
  return Scalar((tr / pi) % p);
}

}  // namespace

std::vector<Vec> matrix_algebra_radical(Scalar p, const std::vector<FpMatrix>& basis) {
  const std::size_t d = basis.size();
  if (d == 0) return {};
  const std::size_t n = basis[0].rows();
  std::size_t levels = 0;
  for (std::uint64_t q = p; q <= n; q *= p) ++levels;
  std::vector<Vec> current;
  for (std::size_t k = 0; k < d; ++k) {
    Vec e(d, 0);
    e[k] = 1;
    current.push_back(e);
  }
  auto to_matrix = [&](const Vec& coords) {
    FpMatrix m(p, n, n);
    for (std::size_t t = 0; t < d; ++t)
      if (coords[t]) m = m + basis[t].scaled(coords[t]);
    return m;
  };
  for (std::size_t i = 0; i <= levels && !current.empty(); ++i) {
    FpMatrix g(p, current.size(), d);
    for (std::size_t k = 0; k < current.size(); ++k) {
      FpMatrix a = to_matrix(current[k]);
      for (std::size_t j = 0; j < d; ++j) g.set(k, j, trace_functional(a * basis[j], p, i));
    }
    std::vector<Vec> next;
    for (const auto& y : left_nullspace_basis(g)) next.push_back(linear_combination(p, current, y, d));
    current = echelon_basis(p, next, d);
  }
  return current;
}

Ideal jacobson_radical(const AlgebraPtr& alg) {
  std::vector<FpMatrix> reps;
  for (std::size_t i = 0; i < alg->dim(); ++i) reps.push_back(alg->left_multiplication(alg->basis_vector(i)));
  return Ideal{alg, matrix_algebra_radical(alg->p(), reps)};
}

bool is_split_local(const AlgebraPtr& alg) { return jacobson_radical(alg).dim() + 1 == alg->dim(); }

// ---------------------------------------------------------------------------
// Morphisms.

AlgebraMorphism AlgebraMorphism::create(AlgebraPtr source, AlgebraPtr target, FpMatrix matrix) {
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw DimensionMismatch("morphism matrix must be dim(target) x dim(source)");
  if (source->p() != target->p() || matrix.p() != source->p()) throw AlgebraMismatch("characteristics differ");
  if (matrix.apply(source->unit()) != target->unit()) throw InputError("morphism does not preserve the unit");
  for (std::size_t i = 0; i < source->dim(); ++i)
    for (std::size_t j = 0; j < source->dim(); ++j) {
      Vec lhs = matrix.apply(source->basis_product(i, j));
      Vec rhs = target->multiply(matrix.column(i), matrix.column(j));
      if (lhs != rhs)
        throw InputError("morphism does not preserve the product of basis elements " + std::to_string(i) + ", " +
                         std::to_string(j));
    }
  AlgebraMorphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  std::size_t r = rank(matrix);
  f.surjective_ = r == f.target_->dim();
  f.injective_ = r == f.source_->dim();
  f.matrix_ = std::move(matrix);
  return f;
}

AlgebraMorphism AlgebraMorphism::identity(const AlgebraPtr& alg) {
  return create(alg, alg, FpMatrix::identity(alg->p(), alg->dim()));
}

Vec AlgebraMorphism::preimage(const Vec& b) const {
  auto sol = solve(matrix_, FpMatrix::from_columns(matrix_.p(), {b}, b.size()));
  if (!sol) throw InputError("element is not in the image of the morphism");
  return sol->particular.column(0);
}

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f) {
  if (!same_algebra(f.target(), g.source())) throw AlgebraMismatch("morphisms are not composable");
  return AlgebraMorphism::create(f.source(), g.target(), g.matrix() * f.matrix());
}

SubalgebraResult subalgebra_generated(const AlgebraPtr& alg, const std::vector<Vec>& elements) {
  Subspace span = closure_right(*alg, Subspace(alg->p(), alg->dim(), {alg->unit()}), elements);
  const auto& basis = span.basis();
  const std::size_t m = basis.size();
  std::vector<std::vector<Vec>> mul(m, std::vector<Vec>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mul[i][j] = *span.coordinates(alg->multiply(basis[i], basis[j]));
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(alg->format_element(b));
  auto sub = FiniteAlgebra::from_trusted_constants(alg->p(), std::move(mul), *span.coordinates(alg->unit()),
                                                     std::move(labels));
  FpMatrix incl = FpMatrix::from_columns(alg->p(), basis, alg->dim());
  return {sub, AlgebraMorphism::create(sub, alg, incl)};
}

QuotientResult quotient_by_ideal(const Ideal& ideal) {
  const auto& alg = ideal.algebra;
  Subspace sub(alg->p(), alg->dim(), ideal.basis);
  if (sub.contains(alg->unit())) throw InputError("ideal contains the unit");
  auto keep = sub.complement_positions();
  auto project = [&](const Vec& v) {
    Vec r = sub.reduce(v);
    Vec out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) out[i] = r[keep[i]];
    return out;
  };
  const std::size_t m = keep.size();
  std::vector<std::vector<Vec>> mul(m, std::vector<Vec>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mul[i][j] = project(alg->basis_product(keep[i], keep[j]));
  std::vector<std::string> labels;
  for (auto k : keep) labels.push_back(alg->labels()[k]);
  auto q = FiniteAlgebra::from_trusted_constants(alg->p(), std::move(mul), project(alg->unit()), std::move(labels));
  FpMatrix proj(alg->p(), m, alg->dim());
  for (std::size_t j = 0; j < alg->dim(); ++j) {
    Vec col = project(alg->basis_vector(j));
    for (std::size_t i = 0; i < m; ++i) proj.set(i, j, col[i]);
  }
  return {q, AlgebraMorphism::create(alg, q, proj)};
}

Ideal kernel_ideal(const AlgebraMorphism& f) { return make_ideal(f.source(), nullspace_basis(f.matrix())); }

// ---------------------------------------------------------------------------
// Unit groups.

namespace {

struct UnitTable {
  std::vector<Vec> elements;
  std::map<Vec, std::size_t> index;
  std::vector<std::size_t> order;
};

UnitTable enumerate_units(const FiniteAlgebra& alg, std::size_t cap) {
  UnitTable t;
  double total = 1;
  for (std::size_t i = 0; i < alg.dim(); ++i) total *= alg.p();
  if (total > double(cap)) throw CapExceeded("unit group enumeration exceeds element cap");
  CoefficientCounter counter(alg.p(), alg.dim());
  do {
    const Vec& a = counter.value();
    if (!vec_is_zero(a) && alg.is_unit(a)) {
      t.index.emplace(a, t.elements.size());
      t.elements.push_back(a);
    }
  } while (counter.next());
  for (const auto& a : t.elements) {
    std::size_t k = 1;
    Vec x = a;
    while (x != alg.unit()) {
      x = alg.multiply(x, a);
      ++k;
    }
    t.order.push_back(k);
  }
  return t;
}

std::vector<std::pair<std::uint64_t, std::size_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::size_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::size_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// Subgroup membership closure: returns the set generated by `current` and g.
std::set<std::size_t> extend_subgroup(const UnitTable& t, const FiniteAlgebra& alg, const std::set<std::size_t>& current,
                                      std::size_t g) {
  std::set<std::size_t> out = current;
  Vec power = t.elements[g];
  std::vector<Vec> powers;
  while (power != alg.unit()) {
    powers.push_back(power);
    power = alg.multiply(power, t.elements[g]);
  }
  for (auto h : current)
    for (const auto& pw : powers) out.insert(t.index.at(alg.multiply(t.elements[h], pw)));
  return out;
}

bool search_basis(const UnitTable& t, const FiniteAlgebra& alg, const std::vector<std::size_t>& orders, std::size_t pos,
                  const std::set<std::size_t>& sub, std::vector<std::size_t>& chosen) {
  if (pos == orders.size()) return sub.size() == t.elements.size();
  for (std::size_t g = 0; g < t.elements.size(); ++g) {
    if (t.order[g] != orders[pos] || sub.count(g)) continue;
    auto next = extend_subgroup(t, alg, sub, g);
    if (next.size() != sub.size() * orders[pos]) continue;
    chosen.push_back(g);
    if (search_basis(t, alg, orders, pos + 1, next, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

UnitGroup unit_group(const AlgebraPtr& alg, std::size_t element_cap) {
  if (!alg->is_commutative()) throw NotCommutative("unit_group requires a commutative algebra");
  UnitTable t = enumerate_units(*alg, element_cap);
  const std::uint64_t n = t.elements.size();
  // Invariant factors from counts of elements of q-power order, prime by prime.
  std::vector<std::vector<std::uint64_t>> cyclic_parts;  // per prime, list of q^e with multiplicity
  for (auto [q, e] : factorize(n)) {
    std::vector<std::size_t> count(e + 1, 0);
    std::uint64_t qk = 1;
    for (std::size_t k = 0; k <= e; ++k) {
      for (auto o : t.order)
        if (qk % o == 0) ++count[k];
      qk *= q;
    }
    // r[k] = number of cyclic factors of order >= q^k
    std::vector<std::size_t> r(e + 2, 0);
    for (std::size_t k = 1; k <= e; ++k) {
      std::size_t ratio = count[k] / count[k - 1], lg = 0;
      while (ratio > 1) {
        ratio /= q;
        ++lg;
      }
      r[k] = lg;
    }
    std::vector<std::uint64_t> parts;
    std::uint64_t qe = 1;
    for (std::size_t k = 1; k <= e; ++k) {
      qe *= q;
      for (std::size_t m = 0; m < r[k] - r[k + 1]; ++m) parts.push_back(qe);
    }
    std::sort(parts.rbegin(), parts.rend());
    cyclic_parts.push_back(parts);
  }
  std::size_t rk = 0;
  for (const auto& parts : cyclic_parts) rk = std::max(rk, parts.size());
  std::vector<std::size_t> factors(rk, 1);  // descending
  for (const auto& parts : cyclic_parts)
    for (std::size_t i = 0; i < parts.size(); ++i) factors[i] *= parts[i];
  std::vector<std::size_t> chosen;
  std::set<std::size_t> trivial{t.index.at(alg->unit())};
  if (!search_basis(t, *alg, factors, 0, trivial, chosen))
    throw std::logic_error("unit group: no independent generating set found");
  UnitGroup ug;
  ug.order = n;
  for (std::size_t i = rk; i-- > 0;) {
    ug.structure.torsion.push_back(BigInt(factors[i]));
    ug.generators.push_back(t.elements[chosen[i]]);
  }
  return ug;
}

bool is_unit_basis(const AlgebraPtr& alg, const std::vector<Vec>& gens, const std::vector<BigInt>& orders) {
  if (gens.size() != orders.size()) return false;
  UnitTable t = enumerate_units(*alg, 1u << 20);
  std::set<std::size_t> sub{t.index.at(alg->unit())};
  BigInt product = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto it = t.index.find(gens[i]);
    if (it == t.index.end()) return false;
    if (BigInt(t.order[it->second]) != orders[i]) return false;
    auto next = extend_subgroup(t, *alg, sub, it->second);
    if (BigInt(next.size()) != BigInt(sub.size()) * orders[i]) return false;
    sub = std::move(next);
    product *= orders[i];
  }
  return product == BigInt(t.elements.size()) && sub.size() == t.elements.size();
}

// ---------------------------------------------------------------------------
// Freeness over a subalgebra.

namespace {

std::vector<Vec> translate(const AlgebraMorphism& incl, const Vec& b, Side side) {
  const auto& B = *incl.target();
  std::vector<Vec> out;
  for (std::size_t k = 0; k < incl.source()->dim(); ++k) {
    Vec a = incl.matrix().column(k);
    out.push_back(side == Side::Right ? B.multiply(b, a) : B.multiply(a, b));
  }
  return out;
}

bool free_search(const AlgebraMorphism& incl, Side side, const std::vector<Vec>& candidates, std::size_t start,
                 const std::vector<Vec>& span, std::size_t r, std::vector<Vec>& chosen) {
  const auto& B = *incl.target();
  const std::size_t da = incl.source()->dim();
  if (chosen.size() == r) return true;
  for (std::size_t c = start; c < candidates.size(); ++c) {
    auto block = translate(incl, candidates[c], side);
    std::vector<Vec> next = span;
    next.insert(next.end(), block.begin(), block.end());
    if (echelon_basis(B.p(), next, B.dim()).size() != span.size() + da) continue;
    chosen.push_back(candidates[c]);
    if (free_search(incl, side, candidates, c + 1, next, r, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<Vec>> is_free_over_subalgebra(const AlgebraMorphism& inclusion, Side side) {
  if (!inclusion.injective()) throw InputError("is_free_over_subalgebra needs an injective morphism");
  const auto& B = *inclusion.target();
  const std::size_t da = inclusion.source()->dim(), db = B.dim();
  if (db % da != 0) return std::nullopt;
  const std::size_t r = db / da;
  // Greedy pass over the unit and the basis, then exhaustive backtracking on small algebras.
  std::vector<Vec> candidates{B.unit()};
  for (std::size_t i = 0; i < db; ++i) candidates.push_back(B.basis_vector(i));
  std::vector<Vec> chosen;
  std::vector<Vec> span;
  for (const auto& c : candidates) {
    if (chosen.size() == r) break;
    auto block = translate(inclusion, c, side);
    std::vector<Vec> next = span;
    next.insert(next.end(), block.begin(), block.end());
    if (echelon_basis(B.p(), next, db).size() == span.size() + da) {
      chosen.push_back(c);
      span = next;
    }
  }
  if (chosen.size() == r) return chosen;
  double total = 1;
  for (std::size_t i = 0; i < db; ++i) total *= B.p();
  if (total > 4096) return std::nullopt;
  std::vector<Vec> all;
  CoefficientCounter counter(B.p(), db);
  while (counter.next()) all.push_back(counter.value());
  chosen.clear();
  if (free_search(inclusion, side, all, 0, {}, r, chosen)) return chosen;
  return std::nullopt;
}

}  // namespace stabg
