#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eqmorse/coefficients.hpp"

namespace eqmorse {

/// Small dense matrix over one of the coefficient rings, row-major.
class Matrix {
 public:
  Matrix() : Matrix(RingSpec::integers(), 0, 0) {}
  Matrix(RingSpec ring, std::size_t rows, std::size_t cols);

  static Matrix identity(RingSpec ring, std::size_t n);

  const RingSpec& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_identity() const;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix&, const Matrix&);

 private:
  RingSpec ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

/// Inverse over the matrix's ring, if one exists. Over ℤ this requires
/// det = ±1; over ℤ/m it requires gcd(det, m) = 1.
std::optional<Matrix> try_inverse(const Matrix& m);

}  // namespace eqmorse
