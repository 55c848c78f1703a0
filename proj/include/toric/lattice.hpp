#pragma once

// Exact integer linear algebra over Z^n. No floating point anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

IntVector make_vector(std::initializer_list<long> values);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  explicit IntMatrix(const std::vector<IntVector>& rows);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntMatrix& m, const IntVector& v);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

Integer dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector scaled(const IntVector& v, const Integer& k);
bool is_zero(const IntVector& v);

/// gcd of all entries; 0 for the zero vector.
Integer content(const IntVector& v);
bool is_primitive(const IntVector& v);

std::string to_string(const IntVector& v);

/// Exact determinant by Bareiss fraction-free elimination.
/// Throws Error(shape) for non-square input.
Integer determinant(const IntMatrix& m);

enum class SolveStatus { unique, none, underdetermined };

struct SolveResult {
  SolveStatus status = SolveStatus::none;
  IntVector solution;  // populated only when status == unique
};

/// Solves A x = b over the integers. Reports `none` when the system is
/// inconsistent or its unique rational solution is non-integral, and
/// `underdetermined` when a consistent system has more than one solution.
SolveResult solve_integer_system(const IntMatrix& a, const IntVector& b);

/// Coordinates c with sum_i c_i * basis.row(i) == p. The basis must be square
/// with determinant +-1, otherwise Error(precondition).
IntVector express_in_basis(const IntMatrix& basis, const IntVector& p);

/// Inverse of a unimodular matrix; nullopt when |det| != 1.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m);

}  // namespace toric
