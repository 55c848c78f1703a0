#include "toric/lattice.hpp"

#include <utility>

#include "toric/error.hpp"

namespace toric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::shape: return "shape error";
    case ErrorKind::index: return "index error";
    case ErrorKind::precondition: return "precondition error";
    case ErrorKind::contraction: return "contraction error";
    case ErrorKind::flip: return "flip error";
    case ErrorKind::disjointness: return "disjointness error";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::non_fano: return "non-Fano input";
    case ErrorKind::wrong_minimal_dimension: return "wrong minimal P-dimension";
    case ErrorKind::not_contractible: return "contractibility failure";
    case ErrorKind::unexpected_relation: return "unexpected relevant relation";
    case ErrorKind::verification: return "verification failure";
    case ErrorKind::underdetermined: return "underdetermined system";
    case ErrorKind::inconsistent: return "inconsistent system";
    case ErrorKind::invalid_fan: return "invalid fan";
    case ErrorKind::pc_mismatch: return "primitive collection mismatch";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::invalid_certificate: return "invalid certificate";
    case ErrorKind::malformed_log: return "malformed log";
  }
  return "error";
}

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(const std::vector<IntVector>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::shape, "rows of unequal length");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::shape, "rows of unequal length");
    for (long x : r) data_.emplace_back(x);
  }
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (m.cols() != v.size()) throw Error(ErrorKind::shape, "matrix-vector size mismatch");
  IntVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::shape, "matrix product size mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::shape, "dot product size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::shape, "vector sum size mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector scaled(const IntVector& v, const Integer& k) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * k;
  return out;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::shape, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(a(swap, k)) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  Integer d = a(n - 1, n - 1);
  return sign > 0 ? d : Integer(-d);
}

namespace {

// Reduced row echelon form of the augmented system [A | b] over Q.
// Returns pivot columns; `rows` is modified in place.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

SolveResult solve_integer_system(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw Error(ErrorKind::shape, "right-hand side length does not match row count");
  const std::size_t n = a.cols();
  std::vector<std::vector<Rational>> rows(a.rows(), std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n] = b[i];
  }
  const auto pivots = rref(rows, n);
  for (std::size_t i = pivots.size(); i < rows.size(); ++i)
    if (sgn(rows[i][n]) != 0) return {SolveStatus::none, {}};
  if (pivots.size() < n) return {SolveStatus::underdetermined, {}};
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& v = rows[i][n];
    if (v.get_den() != 1) return {SolveStatus::none, {}};
    x[pivots[i]] = v.get_num();
  }
  return {SolveStatus::unique, std::move(x)};
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::shape, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  const auto pivots = rref(rows, n);
  if (pivots.size() < n) return std::nullopt;
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = rows[i][n + j];
      if (v.get_den() != 1) return std::nullopt;
      inv(i, j) = v.get_num();
    }
  if (abs(determinant(m)) != 1) return std::nullopt;
  return inv;
}

IntVector express_in_basis(const IntMatrix& basis, const IntVector& p) {
  if (!basis.square()) throw Error(ErrorKind::precondition, "basis must be square");
  if (basis.cols() != p.size()) throw Error(ErrorKind::shape, "point dimension does not match basis");
  if (abs(determinant(basis)) != 1) throw Error(ErrorKind::precondition, "basis is not unimodular");
  // sum_i c_i row_i = p  <=>  basis^T c = p
  const auto result = solve_integer_system(basis.transposed(), p);
  return result.solution;
}

}  // namespace toric
