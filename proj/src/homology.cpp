#include "eqmorse/homology.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "eqmorse/error.hpp"

namespace eqmorse {

namespace {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::size_t column_count(const IntMatrix& m) { return m.empty() ? 0 : m[0].size(); }

// Row and column operations, mirrored onto the accumulated transforms.
struct SmithState {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i -= q * row_j
  void sub_row(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t c = 0; c < cols; ++c) d[i][c] -= q * d[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
  }
  // col_i -= q * col_j
  void sub_col(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t r = 0; r < rows; ++r) d[r][i] -= q * d[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] -= q * v[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

mpz_class truncated_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < diagonal.size() && i < column_count(diagonal); ++i) {
    if (diagonal[i][i] != 0) out.push_back(diagonal[i][i]);
  }
  return out;
}

IntMatrix multiply(const IntMatrix& lhs, const IntMatrix& rhs) {
  const std::size_t n = lhs.size();
  const std::size_t k = column_count(lhs);
  const std::size_t m = column_count(rhs);
  if (k != rhs.size()) throw Error(ErrorKind::contract_violation, "integer matrix shape mismatch");
  IntMatrix out(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (lhs[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += lhs[i][t] * rhs[t][j];
    }
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = column_count(a);
  SmithState s{a, identity_matrix(rows), identity_matrix(cols), rows, cols};

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero |entry| of the trailing block, first in (row, col) order.
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (s.d[i][j] == 0) continue;
        if (!pivot || abs(s.d[i][j]) < abs(s.d[pivot->first][pivot->second])) pivot = {i, j};
      }
    }
    if (!pivot) break;
    s.swap_rows(t, pivot->first);
    s.swap_cols(t, pivot->second);

    while (true) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.d[i][t] != 0) s.sub_row(i, t, truncated_quotient(s.d[i][t], s.d[t][t]));
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.d[t][j] != 0) s.sub_col(j, t, truncated_quotient(s.d[t][j], s.d[t][t]));
      }
      // Any leftover in row or column t is a remainder, smaller than the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> smaller;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.d[i][t] != 0 && (!smaller || abs(s.d[i][t]) < abs(s.d[smaller->first][smaller->second]))) {
          smaller = {i, t};
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.d[t][j] != 0 && (!smaller || abs(s.d[t][j]) < abs(s.d[smaller->first][smaller->second]))) {
          smaller = {t, j};
        }
      }
      if (smaller) {
        if (smaller->first != t) s.swap_rows(t, smaller->first);
        if (smaller->second != t) s.swap_cols(t, smaller->second);
        continue;
      }
      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < rows && !offending_row; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (s.d[i][j] % s.d[t][t] != 0) {
            offending_row = i;
            break;
          }
        }
      }
      if (!offending_row) break;
      s.sub_row(t, *offending_row, -1);
    }
    if (s.d[t][t] < 0) s.negate_row(t);
  }

  if (multiply(multiply(s.u, a), s.v) != s.d) {
    throw Error(ErrorKind::internal_invariant, "Smith normal form transform identity failed");
  }
  return SmithForm{std::move(s.d), std::move(s.u), std::move(s.v)};
}

mpz_class determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n != column_count(m)) throw Error(ErrorKind::contract_violation, "determinant of non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

IntMatrix integer_boundary(const ChainComplex& complex, int n) {
  const auto& cols = complex.basis(n);
  const auto& rows = complex.basis(n - 1);
  IntMatrix m(rows.size(), std::vector<mpz_class>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [label, c] : complex.boundary(Cell{n, cols[j]}).terms()) {
      auto i = complex.index_of(n - 1, label);
      m[*i][j] = c.value().get_num();
    }
  }
  return m;
}

// Rank over ℚ (modulus 0) or over ℤ/p, by plain Gaussian elimination.
std::size_t field_rank(const ChainComplex& complex, int n) {
  const auto& cols = complex.basis(n);
  const auto& rows = complex.basis(n - 1);
  if (cols.empty() || rows.empty()) return 0;
  const bool modular = complex.ring().kind() == RingKind::modular;
  const mpz_class p = modular ? mpz_class(static_cast<long>(complex.ring().modulus())) : mpz_class(0);
  std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [label, c] : complex.boundary(Cell{n, cols[j]}).terms()) {
      m[*complex.index_of(n - 1, label)][j] = c.value();
    }
  }
  auto reduce_entry = [&](mpq_class& x) {
    if (!modular) return;
    mpz_class r;
    mpz_class num = x.get_num();
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    x = r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(m[pivot], m[rank]);
    mpq_class inv;
    if (modular) {
      mpz_class a = m[rank][col].get_num();
      mpz_class r;
      mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
      inv = r;
    } else {
      inv = 1 / m[rank][col];
    }
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (sgn(m[i][col]) == 0) continue;
      mpq_class f = m[i][col] * inv;
      reduce_entry(f);
      for (std::size_t j = col; j < cols.size(); ++j) {
        m[i][j] -= f * m[rank][j];
        reduce_entry(m[i][j]);
      }
    }
    ++rank;
  }
  return rank;
}

std::string describe(const DegreeHomology& h) {
  std::string out = "betti " + std::to_string(h.betti) + ", torsion [";
  for (std::size_t i = 0; i < h.torsion.size(); ++i) out += (i ? "," : "") + h.torsion[i].get_str();
  return out + "]";
}

}  // namespace

HomologyProfile homology(const ChainComplex& complex) {
  const RingSpec ring = complex.ring();
  if (ring.kind() == RingKind::modular && !ring.is_field()) {
    throw Error(ErrorKind::unsupported_coefficients,
                "homology over " + ring.name() + " is not supported: modulus is composite");
  }
  const int lo = complex.min_degree();
  const int hi = complex.max_degree();
  std::map<int, std::size_t> boundary_rank;
  std::map<int, std::vector<mpz_class>> torsion_below;  // torsion of H_{n-1} from ∂_n
  for (int n = lo + 1; n <= hi; ++n) {
    if (ring.kind() == RingKind::integers) {
      SmithForm snf = smith_normal_form(integer_boundary(complex, n));
      auto factors = snf.invariant_factors();
      boundary_rank[n] = factors.size();
      for (const auto& f : factors) {
        if (f > 1) torsion_below[n - 1].push_back(f);
      }
    } else {
      boundary_rank[n] = field_rank(complex, n);
    }
  }
  HomologyProfile profile;
  for (int n = lo; n <= hi; ++n) {
    DegreeHomology h;
    h.betti = complex.rank(n) - boundary_rank[n] - boundary_rank[n + 1];
    h.torsion = torsion_below[n];
    profile.degrees.emplace(n, std::move(h));
  }
  return profile;
}

HomologyComparison compare(const ChainComplex& lhs, const ChainComplex& rhs) {
  if (!(lhs.ring() == rhs.ring())) {
    throw Error(ErrorKind::ring_mismatch, "comparing homology over different rings");
  }
  HomologyProfile a = homology(lhs);
  HomologyProfile b = homology(rhs);
  std::set<int> degrees;
  for (const auto& [n, h] : a.degrees) degrees.insert(n);
  for (const auto& [n, h] : b.degrees) degrees.insert(n);
  for (int n : degrees) {
    DegreeHomology x = a.degrees.contains(n) ? a.degrees.at(n) : DegreeHomology{};
    DegreeHomology y = b.degrees.contains(n) ? b.degrees.at(n) : DegreeHomology{};
    if (!(x == y)) {
      return {false, n, "degree " + std::to_string(n) + ": " + describe(x) + " vs " + describe(y)};
    }
  }
  return {true, std::nullopt, ""};
}

}  // namespace eqmorse
