#include "eqmorse/linalg.hpp"

#include <utility>

#include "eqmorse/error.hpp"

namespace eqmorse {

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Scalar(ring)) {}

Matrix Matrix::identity(RingSpec ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(ring, 1L);
  return m;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& v = at(r, c);
      if (r == c ? !v.is_one() : !v.is_zero()) return false;
    }
  }
  return true;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (!(lhs.ring_ == rhs.ring_)) {
    throw Error(ErrorKind::ring_mismatch, "matrix product across rings");
  }
  if (lhs.cols_ != rhs.rows_) {
    throw Error(ErrorKind::contract_violation, "matrix product shape mismatch");
  }
  Matrix out(lhs.ring_, lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Scalar& a = lhs.at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Scalar& b = rhs.at(k, j);
        if (!b.is_zero()) out.at(i, j) += a * b;
      }
    }
  }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.ring_ == rhs.ring_ && lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ &&
         lhs.data_ == rhs.data_;
}

namespace {

// Gauss-Jordan over ℚ on the integer or rational lift. Returns the rational
// inverse together with the determinant, or nullopt when singular over ℚ.
std::optional<std::pair<std::vector<mpq_class>, mpq_class>> rational_inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<mpq_class> a(n * n);
  std::vector<mpq_class> inv(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m.at(r, c).value();
    inv[r * n + r] = 1;
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot * n + col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a[pivot * n + c], a[col * n + c]);
        std::swap(inv[pivot * n + c], inv[col * n + c]);
      }
      det = -det;
    }
    mpq_class p = a[col * n + col];
    det *= p;
    for (std::size_t c = 0; c < n; ++c) {
      a[col * n + c] /= p;
      inv[col * n + c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      mpq_class f = a[r * n + col];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(a[col * n + c]) != 0) a[r * n + c] -= f * a[col * n + c];
        if (sgn(inv[col * n + c]) != 0) inv[r * n + c] -= f * inv[col * n + c];
      }
    }
  }
  return std::make_pair(std::move(inv), det);
}

}  // namespace

std::optional<Matrix> try_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  const RingSpec ring = m.ring();
  auto lifted = rational_inverse(m);
  if (!lifted) return std::nullopt;
  auto& [inv, det] = *lifted;

  Matrix out(ring, n, n);
  switch (ring.kind()) {
    case RingKind::rationals:
      for (std::size_t i = 0; i < n * n; ++i) out.at(i / n, i % n) = Scalar(ring, inv[i]);
      return out;
    case RingKind::integers:
      for (std::size_t i = 0; i < n * n; ++i) {
        if (inv[i].get_den() != 1) return std::nullopt;
        out.at(i / n, i % n) = Scalar(ring, inv[i]);
      }
      return out;
    case RingKind::modular: {
      // The lift is integral, so det * inverse is the integral adjugate.
      auto det_inv = try_invert(Scalar(ring, mpz_class(det.get_num())));
      if (!det_inv) return std::nullopt;
      for (std::size_t i = 0; i < n * n; ++i) {
        mpq_class adj = inv[i] * det;
        out.at(i / n, i % n) = Scalar(ring, mpz_class(adj.get_num())) * *det_inv;
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace eqmorse
