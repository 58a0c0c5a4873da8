#include "eqmorse/complex.hpp"

#include <algorithm>

#include "eqmorse/error.hpp"
#include "eqmorse/linalg.hpp"

namespace eqmorse {

std::string to_string(const Cell& cell) {
  return cell.label + "[" + std::to_string(cell.degree) + "]";
}

// --- Chain ------------------------------------------------------------------

Scalar Chain::coefficient(const std::string& label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Scalar(ring_) : it->second;
}

void Chain::add_term(const std::string& label, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(label, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Chain& Chain::operator+=(const Chain& other) {
  if (!(ring_ == other.ring_)) throw Error(ErrorKind::ring_mismatch, "chain sum across rings");
  if (degree_ != other.degree_ && !other.is_zero()) {
    throw Error(ErrorKind::contract_violation, "chain sum across degrees");
  }
  for (const auto& [label, c] : other.terms_) add_term(label, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& other) { return *this += other.scaled(Scalar(ring_, -1L)); }

Chain Chain::scaled(const Scalar& factor) const {
  Chain out(ring_, degree_);
  if (factor.is_zero()) return out;
  for (const auto& [label, c] : terms_) out.add_term(label, c * factor);
  return out;
}

bool operator==(const Chain& lhs, const Chain& rhs) {
  return lhs.ring_ == rhs.ring_ && lhs.degree_ == rhs.degree_ && lhs.terms_ == rhs.terms_;
}

Scalar coefficient(const Cell& a, const Chain& x) {
  if (a.degree != x.degree()) {
    throw Error(ErrorKind::contract_violation,
                "coefficient of " + to_string(a) + " requested in a degree-" +
                    std::to_string(x.degree()) + " chain");
  }
  return x.coefficient(a.label);
}

// --- ChainComplex -----------------------------------------------------------

ChainComplex::ChainComplex(RingSpec ring, int min_degree, int max_degree, Basis basis,
                           Boundary boundary)
    : ring_(ring), min_degree_(min_degree), max_degree_(max_degree) {
  if (min_degree > max_degree) {
    throw Error(ErrorKind::contract_violation, "empty degree range");
  }
  for (auto& [n, labels] : basis) {
    if (n < min_degree || n > max_degree) {
      if (labels.empty()) continue;
      throw Error(ErrorKind::contract_violation,
                  "basis given in degree " + std::to_string(n) + " outside the degree range");
    }
    Degree d;
    d.labels = std::move(labels);
    std::sort(d.labels.begin(), d.labels.end());
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      if (i > 0 && d.labels[i] == d.labels[i - 1]) {
        throw Error(ErrorKind::contract_violation,
                    "duplicate label '" + d.labels[i] + "' in degree " + std::to_string(n));
      }
      d.index.emplace(d.labels[i], i);
    }
    d.columns.assign(d.labels.size(), Chain(ring, n - 1));
    degrees_.emplace(n, std::move(d));
  }
  for (auto& [n, columns] : boundary) {
    for (auto& [label, chain] : columns) {
      Cell cell{n, label};
      auto it = degrees_.find(n);
      if (it == degrees_.end() || !it->second.index.contains(label)) {
        throw Error(ErrorKind::unknown_basis_element,
                    "boundary given for unknown element " + to_string(cell));
      }
      if (chain.is_zero()) continue;
      if (!(chain.ring() == ring)) {
        throw Error(ErrorKind::ring_mismatch, "boundary of " + to_string(cell) + " in wrong ring");
      }
      if (chain.degree() != n - 1) {
        throw Error(ErrorKind::contract_violation,
                    "boundary of " + to_string(cell) + " has wrong degree");
      }
      if (n == min_degree) {
        throw Error(ErrorKind::contract_violation,
                    "nonzero boundary in the lowest degree at " + to_string(cell));
      }
      for (const auto& [target, c] : chain.terms()) {
        if (!contains(Cell{n - 1, target})) {
          throw Error(ErrorKind::unknown_basis_element,
                      "boundary of " + to_string(cell) + " mentions unknown element " +
                          to_string(Cell{n - 1, target}));
        }
      }
      it->second.columns[it->second.index.at(label)] = std::move(chain);
    }
  }
}

ChainComplex ChainComplex::zero(RingSpec ring) { return ChainComplex(ring, 0, 0, {}, {}); }

const ChainComplex::Degree* ChainComplex::find_degree(int degree) const {
  auto it = degrees_.find(degree);
  return it == degrees_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& ChainComplex::basis(int degree) const {
  static const std::vector<std::string> empty;
  const Degree* d = find_degree(degree);
  return d ? d->labels : empty;
}

std::size_t ChainComplex::total_rank() const {
  std::size_t total = 0;
  for (const auto& [n, d] : degrees_) total += d.labels.size();
  return total;
}

bool ChainComplex::contains(const Cell& cell) const {
  return index_of(cell.degree, cell.label).has_value();
}

std::optional<std::size_t> ChainComplex::index_of(int degree, const std::string& label) const {
  const Degree* d = find_degree(degree);
  if (!d) return std::nullopt;
  auto it = d->index.find(label);
  if (it == d->index.end()) return std::nullopt;
  return it->second;
}

const Chain& ChainComplex::boundary(const Cell& cell) const {
  const Degree* d = find_degree(cell.degree);
  auto idx = index_of(cell.degree, cell.label);
  if (!d || !idx) {
    throw Error(ErrorKind::unknown_basis_element, "unknown basis element " + to_string(cell));
  }
  return d->columns[*idx];
}

Chain ChainComplex::boundary(const Chain& chain) const {
  Chain out(ring_, chain.degree() - 1);
  for (const auto& [label, c] : chain.terms()) {
    out += boundary(Cell{chain.degree(), label}).scaled(c);
  }
  return out;
}

std::vector<Cell> ChainComplex::cells() const {
  std::vector<Cell> out;
  for (const auto& [n, d] : degrees_) {
    for (const auto& label : d.labels) out.push_back(Cell{n, label});
  }
  return out;
}

bool operator==(const ChainComplex& lhs, const ChainComplex& rhs) {
  if (!(lhs.ring_ == rhs.ring_) || lhs.min_degree_ != rhs.min_degree_ ||
      lhs.max_degree_ != rhs.max_degree_) {
    return false;
  }
  for (int n = lhs.min_degree_; n <= lhs.max_degree_; ++n) {
    const auto& basis = lhs.basis(n);
    if (basis != rhs.basis(n)) return false;
    for (const auto& label : basis) {
      if (!(lhs.boundary(Cell{n, label}) == rhs.boundary(Cell{n, label}))) return false;
    }
  }
  return true;
}

// --- operations ------------------------------------------------------------

std::vector<ComplexViolation> check_complex(const ChainComplex& complex) {
  std::vector<ComplexViolation> out;
  for (const Cell& cell : complex.cells()) {
    const Chain& d = complex.boundary(cell);
    if (d.is_zero()) continue;
    Chain dd = complex.boundary(d);
    if (!dd.is_zero()) out.push_back({cell, std::move(dd)});
  }
  return out;
}

Chain GradedMap::image(const Cell& cell, const RingSpec& ring, bool identity_default) const {
  auto deg = components.find(cell.degree);
  if (deg != components.end()) {
    auto it = deg->second.find(cell.label);
    if (it != deg->second.end()) return it->second;
  }
  Chain out(ring, cell.degree);
  if (identity_default) out.add_term(cell.label, Scalar(ring, 1L));
  return out;
}

namespace {

Matrix component_matrix(const ChainComplex& complex, const GradedMap& f, int n) {
  const auto& basis = complex.basis(n);
  const RingSpec ring = complex.ring();
  Matrix m(ring, basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Chain col = f.image(Cell{n, basis[j]}, ring, true);
    if (!(col.ring() == ring)) throw Error(ErrorKind::ring_mismatch, "graded map in wrong ring");
    for (const auto& [label, c] : col.terms()) {
      auto i = complex.index_of(n, label);
      if (!i) {
        throw Error(ErrorKind::unknown_basis_element,
                    "automorphism image mentions unknown element " + to_string(Cell{n, label}));
      }
      m.at(*i, j) = c;
    }
  }
  return m;
}

Matrix boundary_matrix(const ChainComplex& complex, int n) {
  const auto& cols = complex.basis(n);
  const auto& rows = complex.basis(n - 1);
  Matrix m(complex.ring(), rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [label, c] : complex.boundary(Cell{n, cols[j]}).terms()) {
      m.at(*complex.index_of(n - 1, label), j) = c;
    }
  }
  return m;
}

std::string renamed(const std::map<int, std::map<std::string, std::string>>& relabel, int n,
                    const std::string& label) {
  auto deg = relabel.find(n);
  if (deg == relabel.end()) return label;
  auto it = deg->second.find(label);
  return it == deg->second.end() ? label : it->second;
}

}  // namespace

ChainComplex apply_automorphism(const ChainComplex& complex, const GradedMap& f,
                                const std::map<int, std::map<std::string, std::string>>& relabel) {
  const RingSpec ring = complex.ring();
  std::map<int, Matrix> forward;
  std::map<int, Matrix> inverse;
  for (int n = complex.min_degree(); n <= complex.max_degree(); ++n) {
    Matrix m = component_matrix(complex, f, n);
    auto inv = try_inverse(m);
    if (!inv) {
      throw Error(ErrorKind::singular_basis_change,
                  "basis change in degree " + std::to_string(n) + " is not invertible over " +
                      ring.name());
    }
    forward.emplace(n, std::move(m));
    inverse.emplace(n, std::move(*inv));
  }

  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  for (int n = complex.min_degree(); n <= complex.max_degree(); ++n) {
    auto& labels = basis[n];
    for (const auto& label : complex.basis(n)) labels.push_back(renamed(relabel, n, label));
    if (n == complex.min_degree()) continue;
    // New columns: F_{n-1}^{-1} ∂_n F_n.
    Matrix d = inverse.at(n - 1) * boundary_matrix(complex, n) * forward.at(n);
    const auto& cols = complex.basis(n);
    const auto& rows = complex.basis(n - 1);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Chain col(ring, n - 1);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        col.add_term(renamed(relabel, n - 1, rows[i]), d.at(i, j));
      }
      boundary[n].emplace(renamed(relabel, n, cols[j]), std::move(col));
    }
  }
  return ChainComplex(ring, complex.min_degree(), complex.max_degree(), std::move(basis),
                      std::move(boundary));
}

ChainComplex direct_sum(const ChainComplex& lhs, const ChainComplex& rhs,
                        const std::string& lhs_prefix, const std::string& rhs_prefix) {
  if (!(lhs.ring() == rhs.ring())) {
    throw Error(ErrorKind::ring_mismatch, "direct sum of complexes over different rings");
  }
  const bool lhs_empty = lhs.total_rank() == 0;
  const bool rhs_empty = rhs.total_rank() == 0;
  int lo = std::min(lhs.min_degree(), rhs.min_degree());
  int hi = std::max(lhs.max_degree(), rhs.max_degree());
  if (lhs_empty && !rhs_empty) {
    lo = rhs.min_degree();
    hi = rhs.max_degree();
  } else if (rhs_empty && !lhs_empty) {
    lo = lhs.min_degree();
    hi = lhs.max_degree();
  }
  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  auto copy_in = [&](const ChainComplex& part, const std::string& prefix) {
    for (const Cell& cell : part.cells()) {
      basis[cell.degree].push_back(prefix + cell.label);
      const Chain& d = part.boundary(cell);
      if (d.is_zero()) continue;
      Chain col(part.ring(), cell.degree - 1);
      for (const auto& [label, c] : d.terms()) col.add_term(prefix + label, c);
      boundary[cell.degree].emplace(prefix + cell.label, std::move(col));
    }
  };
  copy_in(lhs, lhs_prefix);
  copy_in(rhs, rhs_prefix);
  return ChainComplex(lhs.ring(), lo, hi, std::move(basis), std::move(boundary));
}

ChainComplex span_subcomplex(const ChainComplex& complex,
                             const std::map<int, std::set<std::string>>& subset) {
  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  for (const auto& [n, labels] : subset) {
    for (const auto& label : labels) {
      Cell cell{n, label};
      if (!complex.contains(cell)) {
        throw Error(ErrorKind::unknown_basis_element, "unknown basis element " + to_string(cell));
      }
      const Chain& d = complex.boundary(cell);
      auto lower = subset.find(n - 1);
      for (const auto& [target, c] : d.terms()) {
        if (lower == subset.end() || !lower->second.contains(target)) {
          throw Error(ErrorKind::not_closed_under_boundary,
                      "boundary of " + to_string(cell) + " leaves the subset at " +
                          to_string(Cell{n - 1, target}));
        }
      }
      basis[n].push_back(label);
      if (!d.is_zero()) boundary[n].emplace(label, d);
    }
  }
  return ChainComplex(complex.ring(), complex.min_degree(), complex.max_degree(), std::move(basis),
                      std::move(boundary));
}

ChainComplex change_ring(const ChainComplex& complex, RingSpec ring) {
  if (complex.ring() == ring) return complex;
  if (complex.ring().kind() != RingKind::integers) {
    throw Error(ErrorKind::unsupported_coefficients,
                "cannot change coefficients from " + complex.ring().name() + " to " + ring.name());
  }
  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  for (const Cell& cell : complex.cells()) {
    basis[cell.degree].push_back(cell.label);
    Chain col(ring, cell.degree - 1);
    for (const auto& [label, c] : complex.boundary(cell).terms()) {
      col.add_term(label, Scalar(ring, c.value()));
    }
    if (!col.is_zero()) boundary[cell.degree].emplace(cell.label, std::move(col));
  }
  return ChainComplex(ring, complex.min_degree(), complex.max_degree(), std::move(basis),
                      std::move(boundary));
}

}  // namespace eqmorse
