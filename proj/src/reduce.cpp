#include "eqmorse/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eqmorse/error.hpp"

namespace eqmorse {

std::string generation_label(const std::string& label, std::size_t step) {
  return label + "@" + std::to_string(step);
}

std::string strip_generation(const std::string& label) {
  auto pos = label.rfind('@');
  if (pos == std::string::npos || pos + 1 == label.size()) return label;
  for (std::size_t i = pos + 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9') return label;
  }
  return label.substr(0, pos);
}

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorKind::internal_invariant, message);
}

std::string describe(const PairOrbit& orbit) {
  std::string out = "{";
  for (std::size_t i = 0; i < orbit.pairs.size(); ++i) {
    out += (i ? ", (" : "(") + orbit.pairs[i].first.label + ", " + orbit.pairs[i].second.label + ")";
  }
  return out + "}";
}

}  // namespace

// --- selection ----------------------------------------------------------------

PairOrbit select_minimal_orbit(const QuotientPoset& quotient,
                               const std::vector<PairOrbit>& remaining) {
  if (remaining.empty()) {
    throw Error(ErrorKind::contract_violation, "no pair orbits left to select from");
  }
  std::vector<std::size_t> two_fibers;
  for (std::size_t c = 0; c < quotient.size(); ++c) {
    if (quotient.is_two_fiber(c)) two_fibers.push_back(c);
  }
  const PairOrbit* best = nullptr;
  for (const PairOrbit& orbit : remaining) {
    const auto& [a, b] = orbit.representative();
    std::size_t q = quotient.class_of(a);
    if (!quotient.is_two_fiber(q) || quotient.class_of(b) != q) {
      throw Error(ErrorKind::contract_violation,
                  "orbit " + describe(orbit) + " is not a fiber of the quotient");
    }
    bool minimal = std::none_of(two_fibers.begin(), two_fibers.end(), [&](std::size_t p) {
      return p != q && quotient.leq(p, q);
    });
    if (minimal && (!best || orbit.representative() < best->representative())) best = &orbit;
  }
  if (!best) fail("no minimal two-element fiber among the remaining orbits");
  return *best;
}

// --- one elimination ----------------------------------------------------------

ReductionStep eliminate_orbit(const ChainComplex& complex, const GroupAction& group,
                              const Matching& matching, const PairOrbit& orbit, std::size_t index) {
  (void)group;
  const RingSpec ring = complex.ring();
  const int n = orbit.upper_degree();
  const Scalar one(ring, 1L);

  std::set<std::string> lower_orbit;  // Ga
  std::set<std::string> upper_orbit;  // Gb
  std::map<std::string, std::string> partner_of;  // a' -> b'
  std::map<std::string, Scalar> inverse_weight;   // a' -> w(b' ≻ a')^{-1}
  for (const auto& [a, b] : orbit.pairs) {
    if (!matching.contains(a, b)) {
      throw Error(ErrorKind::contract_violation,
                  "orbit pair (" + to_string(a) + ", " + to_string(b) + ") is not matched");
    }
    Scalar w = coefficient(a, complex.boundary(b));
    auto inv = try_invert(w);
    if (!inv) {
      throw Error(ErrorKind::weight_not_invertible,
                  "weight " + w.to_string() + " of (" + to_string(a) + ", " + to_string(b) +
                      ") is not a unit");
    }
    lower_orbit.insert(a.label);
    upper_orbit.insert(b.label);
    partner_of.emplace(a.label, b.label);
    inverse_weight.emplace(a.label, *inv);
  }
  // ∂b' may only meet Ga in its own partner; otherwise g∂b is no basis change.
  for (const auto& [a, b] : partner_of) {
    const Chain& db = complex.boundary(Cell{n, b});
    for (const auto& other : lower_orbit) {
      if (other != a && !db.coefficient(other).is_zero()) {
        fail("k_" + other + "(∂" + b + ") ≠ 0 inside one orbit");
      }
    }
  }

  // f_{n-1}: a' ↦ ∂b'.
  GradedMap f_lower;
  for (const auto& [a, b] : partner_of) {
    f_lower.components[n - 1].emplace(a, complex.boundary(Cell{n, b}));
  }

  // f_n: x ↦ x - Σ c(x, b') b' with c(x, b') = k_{a'}(∂x) · w(b' ≻ a')^{-1}.
  std::map<std::string, std::map<std::string, Scalar>> correction;  // x -> b' -> c
  GradedMap f_upper;
  for (const auto& x : complex.basis(n)) {
    if (upper_orbit.contains(x)) continue;
    const Chain& dx = complex.boundary(Cell{n, x});
    Chain image(ring, n);
    image.add_term(x, one);
    for (const auto& [a, b] : partner_of) {
      Scalar c = dx.coefficient(a) * inverse_weight.at(a);
      if (c.is_zero()) continue;
      correction[x].emplace(b, c);
      image.add_term(b, -c);
    }
    if (correction.contains(x)) f_upper.components[n].emplace(x, std::move(image));
  }

  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  for (const Cell& cell : complex.cells()) {
    if (cell.degree == n - 1 && lower_orbit.contains(cell.label)) continue;
    if (cell.degree == n && upper_orbit.contains(cell.label)) continue;
    basis[cell.degree].push_back(cell.label);
    const Chain& d = complex.boundary(cell);

    if (cell.degree == n) {
      // ∂f_n(x) must avoid the new vectors g∂b, i.e. vanish on Ga.
      Chain col = d;
      if (auto it = correction.find(cell.label); it != correction.end()) {
        for (const auto& [b, c] : it->second) col -= complex.boundary(Cell{n, b}).scaled(c);
      }
      for (const auto& a : lower_orbit) {
        if (!col.coefficient(a).is_zero()) {
          fail("∂_n(span Ω_n^Gb) ⊄ span Ω_{n-1}^Gb at " + to_string(cell));
        }
      }
      if (!col.is_zero()) boundary[n].emplace(cell.label, std::move(col));
    } else if (cell.degree == n + 1) {
      // In the new degree-n basis the Gb coordinates of ∂y must vanish.
      Chain col(ring, n);
      std::map<std::string, Scalar> upper_coords;
      for (const auto& b : upper_orbit) upper_coords.emplace(b, d.coefficient(b));
      for (const auto& [x, c] : d.terms()) {
        if (upper_orbit.contains(x)) continue;
        col.add_term(x, c);
        if (auto it = correction.find(x); it != correction.end()) {
          for (const auto& [b, cb] : it->second) upper_coords.at(b) += c * cb;
        }
      }
      for (const auto& [b, coord] : upper_coords) {
        if (!coord.is_zero()) fail("im ∂_{n+1} ⊄ span Ω_n^Gb at " + to_string(cell));
      }
      if (!col.is_zero()) boundary[n + 1].emplace(cell.label, std::move(col));
    } else if (!d.is_zero()) {
      boundary[cell.degree].emplace(cell.label, d);
    }
  }
  ChainComplex residual(ring, complex.min_degree(), complex.max_degree(), std::move(basis),
                        std::move(boundary));

  AcyclicPiece piece;
  piece.degree = n;
  piece.top.assign(upper_orbit.begin(), upper_orbit.end());
  for (const auto& a : lower_orbit) piece.bottom.push_back(generation_label(a, index));
  std::sort(piece.bottom.begin(), piece.bottom.end());
  piece.boundary_block = Matrix(ring, piece.bottom.size(), piece.top.size());
  for (const auto& [a, b] : partner_of) {
    auto row = std::lower_bound(piece.bottom.begin(), piece.bottom.end(), generation_label(a, index));
    auto col = std::lower_bound(piece.top.begin(), piece.top.end(), b);
    piece.boundary_block.at(row - piece.bottom.begin(), col - piece.top.begin()) = one;
  }
  auto contraction = try_inverse(piece.boundary_block);
  if (!contraction) fail("boundary block of " + describe(orbit) + " is singular");
  piece.contraction = std::move(*contraction);

  Matching induced;
  std::set<Matching::Pair> eliminated(orbit.pairs.begin(), orbit.pairs.end());
  for (const auto& [a, b] : matching.pairs()) {
    if (!eliminated.contains({a, b})) induced.insert(a, b);
  }

  return ReductionStep{index,
                       n,
                       orbit,
                       std::move(f_lower),
                       std::move(f_upper),
                       std::move(piece),
                       std::move(induced),
                       std::move(residual),
                       {}};
}

std::vector<WeightViolation> verify_weight_preservation(const ReductionStep& step,
                                                        const ChainComplex& before,
                                                        const ChainComplex& after) {
  std::map<int, std::set<std::string>> survivors;
  for (const auto& [a, b] : step.induced_matching.pairs()) {
    survivors[a.degree].insert(a.label);
    survivors[b.degree].insert(b.label);
  }
  std::vector<WeightViolation> out;
  for (const auto& [degree, uppers] : survivors) {
    auto lowers = survivors.find(degree - 1);
    if (lowers == survivors.end()) continue;
    for (const auto& x : uppers) {
      const Chain& d_before = before.boundary(Cell{degree, x});
      const Chain& d_after = after.boundary(Cell{degree, x});
      for (const auto& y : lowers->second) {
        Scalar w0 = d_before.coefficient(y);
        Scalar w1 = d_after.coefficient(y);
        if (!(w0 == w1)) out.push_back({Cell{degree, x}, Cell{degree - 1, y}, w0, w1});
      }
    }
  }
  return out;
}

// --- pieces -------------------------------------------------------------------

HomotopyData contraction_homotopy(const AcyclicPiece& piece, const GroupAction* group) {
  auto p = try_inverse(piece.boundary_block);
  if (!p) {
    throw Error(ErrorKind::internal_invariant,
                "singular boundary block in degree " + std::to_string(piece.degree));
  }
  const RingSpec ring = piece.boundary_block.ring();
  if (!(piece.boundary_block * *p).is_identity()) fail("∂P is not the identity on the bottom row");
  if (!(*p * piece.boundary_block).is_identity()) fail("P∂ is not the identity on the top row");
  if (piece.contraction.rows() != 0 && !(piece.contraction == *p)) {
    fail("stored contraction differs from the inverse boundary block");
  }
  if (group) {
    auto position = [](const std::vector<std::string>& labels, const std::string& label) {
      auto it = std::lower_bound(labels.begin(), labels.end(), label);
      if (it == labels.end() || *it != label) fail("piece is not stable under the group at " + label);
      return static_cast<std::size_t>(it - labels.begin());
    };
    for (std::size_t g = 0; g < group->generator_count(); ++g) {
      const std::size_t k = piece.top.size();
      Matrix top_perm(ring, k, k);
      Matrix bottom_perm(ring, k, k);
      for (std::size_t j = 0; j < k; ++j) {
        Cell image = group->apply_generator(g, Cell{piece.degree, piece.top[j]});
        top_perm.at(position(piece.top, image.label), j) = Scalar(ring, 1L);
      }
      for (std::size_t j = 0; j < k; ++j) {
        const std::string& label = piece.bottom[j];
        std::string suffix = label.substr(strip_generation(label).size());
        Cell image = group->apply_generator(g, Cell{piece.degree - 1, strip_generation(label)});
        bottom_perm.at(position(piece.bottom, image.label + suffix), j) = Scalar(ring, 1L);
      }
      if (!(*p * bottom_perm == top_perm * *p)) {
        fail("contraction does not commute with generator " + group->generator_name(g));
      }
    }
  }
  return HomotopyData{piece.degree, std::move(*p)};
}

ChainComplex pieces_complex(const std::vector<AcyclicPiece>& pieces, const ChainComplex& like) {
  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  const RingSpec ring = like.ring();
  for (const AcyclicPiece& piece : pieces) {
    for (const auto& label : piece.bottom) basis[piece.degree - 1].push_back(label);
    for (std::size_t j = 0; j < piece.top.size(); ++j) {
      basis[piece.degree].push_back(piece.top[j]);
      Chain col(ring, piece.degree - 1);
      for (std::size_t i = 0; i < piece.bottom.size(); ++i) {
        col.add_term(piece.bottom[i], piece.boundary_block.at(i, j));
      }
      boundary[piece.degree].emplace(piece.top[j], std::move(col));
    }
  }
  return ChainComplex(ring, like.min_degree(), like.max_degree(), std::move(basis),
                      std::move(boundary));
}

ChainComplex decomposition_target(const ReductionResult& result) {
  return direct_sum(result.morse_complex, pieces_complex(result.pieces, result.input), "M/", "T/");
}

// --- the isomorphism ----------------------------------------------------------

GradedMap materialize_iso(const ReductionResult& result) {
  const ChainComplex& input = result.input;
  const RingSpec ring = input.ring();
  const auto cells = input.cells();

  // For each original basis element: coordinates in the current residual
  // basis, and the coordinates already split off into pieces.
  std::map<Cell, Chain> residual;
  std::map<Cell, Chain> split;
  for (const Cell& cell : cells) {
    Chain e(ring, cell.degree);
    e.add_term(cell.label, Scalar(ring, 1L));
    residual.emplace(cell, std::move(e));
    split.emplace(cell, Chain(ring, cell.degree));
  }

  for (const ReductionStep& step : result.steps) {
    const int n = step.degree;
    const auto& lower_images = step.f_lower.components.at(n - 1);  // a' -> ∂b'
    std::map<std::string, std::string> partner_of;
    for (const auto& [a, b] : step.eliminated_orbit.pairs) partner_of.emplace(a.label, b.label);
    std::map<std::string, std::map<std::string, Scalar>> correction;  // x -> b' -> c
    if (auto it = step.f_upper.components.find(n); it != step.f_upper.components.end()) {
      for (const auto& [x, image] : it->second) {
        for (const auto& [b, c] : image.terms()) {
          if (b != x) correction[x].emplace(b, -c);
        }
      }
    }

    for (const Cell& cell : cells) {
      Chain& y = residual.at(cell);
      if (cell.degree == n - 1) {
        for (const auto& [a, db] : lower_images) {
          Scalar mu = y.coefficient(a) * *try_invert(db.coefficient(a));
          if (mu.is_zero()) continue;
          split.at(cell).add_term("T/" + generation_label(a, step.index), mu);
          y -= db.scaled(mu);
        }
        for (const auto& [a, db] : lower_images) {
          if (!y.coefficient(a).is_zero()) fail("coordinate change left a component on " + a);
        }
      } else if (cell.degree == n) {
        Chain rest(ring, n);
        std::map<std::string, Scalar> mu;
        for (const auto& [a, b] : partner_of) mu.emplace(b, y.coefficient(b));
        for (const auto& [x, c] : y.terms()) {
          if (mu.contains(x)) continue;
          rest.add_term(x, c);
          if (auto it = correction.find(x); it != correction.end()) {
            for (const auto& [b, cb] : it->second) mu.at(b) += c * cb;
          }
        }
        for (const auto& [b, coord] : mu) split.at(cell).add_term("T/" + b, coord);
        y = std::move(rest);
      }
    }
  }

  GradedMap iso;
  for (const Cell& cell : cells) {
    Chain image = split.at(cell);
    for (const auto& [label, c] : residual.at(cell).terms()) image.add_term("M/" + label, c);
    iso.components[cell.degree].emplace(cell.label, std::move(image));
  }
  return iso;
}

std::vector<Permutation> target_generators(const ReductionResult& result,
                                           const GroupAction& group) {
  const ChainComplex target = decomposition_target(result);
  std::vector<Permutation> out;
  for (std::size_t g = 0; g < group.generator_count(); ++g) {
    Permutation p{group.generator_name(g), {}};
    for (const Cell& cell : target.cells()) {
      const std::string prefix = cell.label.substr(0, 2);
      const std::string body = cell.label.substr(2);
      const std::string base = strip_generation(body);
      const std::string suffix = body.substr(base.size());
      Cell moved = group.apply_generator(g, Cell{cell.degree, base});
      std::string image = prefix + moved.label + suffix;
      if (image != cell.label) p.maps[cell.degree][cell.label] = image;
    }
    out.push_back(std::move(p));
  }
  return out;
}

DecompositionReport verify_decomposition(const ReductionResult& result, const GroupAction& group) {
  DecompositionReport report;
  const ChainComplex& source = result.input;
  const ChainComplex target = decomposition_target(result);
  const GradedMap iso = result.iso ? *result.iso : materialize_iso(result);
  const RingSpec ring = source.ring();

  auto image_of_chain = [&](const Chain& chain) {
    Chain out(ring, chain.degree());
    for (const auto& [label, c] : chain.terms()) {
      out += iso.image(Cell{chain.degree(), label}, ring, false).scaled(c);
    }
    return out;
  };

  for (const Cell& cell : source.cells()) {
    Chain lhs = target.boundary(iso.image(cell, ring, false));
    Chain rhs = image_of_chain(source.boundary(cell));
    if (!(lhs == rhs)) {
      report.chain_map = false;
      report.problems.push_back("∂'∘iso ≠ iso∘∂ at " + to_string(cell));
    }
  }

  for (int d = source.min_degree(); d <= source.max_degree(); ++d) {
    const auto& cols = source.basis(d);
    const auto& rows = target.basis(d);
    if (cols.size() != rows.size()) {
      report.invertible = false;
      report.problems.push_back("rank mismatch in degree " + std::to_string(d));
      continue;
    }
    Matrix m(ring, rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Chain column = iso.image(Cell{d, cols[j]}, ring, false);
      for (const auto& [label, c] : column.terms()) {
        auto i = target.index_of(d, label);
        if (!i) {
          report.invertible = false;
          report.problems.push_back("iso image mentions unknown " + label);
          continue;
        }
        m.at(*i, j) = c;
      }
    }
    if (!try_inverse(m)) {
      report.invertible = false;
      report.problems.push_back("iso is singular in degree " + std::to_string(d));
    }
  }

  const auto gens = target_generators(result, group);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (const Cell& cell : source.cells()) {
      Chain lhs = iso.image(group.apply_generator(g, cell), ring, false);
      Chain rhs(ring, cell.degree);
      const Chain image = iso.image(cell, ring, false);
      for (const auto& [label, c] : image.terms()) {
        rhs.add_term(gens[g].apply(cell.degree, label), c);
      }
      if (!(lhs == rhs)) {
        report.equivariant = false;
        report.problems.push_back("iso does not commute with " + gens[g].name + " at " +
                                  to_string(cell));
      }
    }
  }
  return report;
}

// --- the whole reduction ------------------------------------------------------

namespace {

void require_clean_input(const ChainComplex& complex, const GroupAction& group,
                         const Matching& matching) {
  if (!check_complex(complex).empty()) {
    throw Error(ErrorKind::contract_violation, "input violates ∂∘∂ = 0");
  }
  if (!verify_g_map(complex, group).empty()) {
    throw Error(ErrorKind::contract_violation, "group does not act by chain maps");
  }
  ValidationReport report = validate(complex, group, matching);
  if (!report.all_ok()) {
    std::string message = "matching is not a G-equivariant acyclic matching with unit weights";
    if (!report.witnesses.empty()) message += ": " + report.witnesses.front().detail;
    throw Error(report.acyclic_ok ? ErrorKind::contract_violation : ErrorKind::acyclicity_failure,
                message);
  }
}

}  // namespace

ReductionResult reduce(const ChainComplex& complex, const GroupAction& group,
                       const Matching& matching, const ReduceOptions& options) {
  require_clean_input(complex, group, matching);

  ChainComplex current = complex;
  GroupAction current_group = group;
  Matching current_matching = matching;
  std::vector<ReductionStep> steps;
  std::vector<AcyclicPiece> pieces;

  for (std::size_t index = 1; !current_matching.empty(); ++index) {
    const CoverGraph poset = build_cover_graph(current);
    auto q = quotient_poset(poset, current_matching);
    if (std::holds_alternative<std::vector<Cell>>(q)) {
      fail("induced matching acquired a cycle at step " + std::to_string(index));
    }
    const auto orbits = pair_orbits(current_matching, current_group);
    PairOrbit orbit = select_minimal_orbit(std::get<QuotientPoset>(q), orbits);
    ReductionStep step = eliminate_orbit(current, current_group, current_matching, orbit, index);
    GroupAction next_group = current_group.restricted_to(step.residual);

    if (options.verify) {
      step.weight_report = verify_weight_preservation(step, current, step.residual);
      if (!step.weight_report.empty()) {
        fail("weights of surviving pairs changed at step " + std::to_string(index));
      }
      if (!check_complex(step.residual).empty()) {
        fail("residual violates ∂∘∂ = 0 at step " + std::to_string(index));
      }
      if (!verify_g_map(step.residual, next_group).empty()) {
        fail("residual is not a G-complex at step " + std::to_string(index));
      }
      if (!validate(step.residual, next_group, step.induced_matching).all_ok()) {
        fail("induced matching is invalid at step " + std::to_string(index));
      }
    }

    pieces.push_back(step.piece);
    current = step.residual;
    current_group = std::move(next_group);
    current_matching = step.induced_matching;
    steps.push_back(std::move(step));
  }

  ReductionResult result{complex, current, std::move(pieces), std::move(steps), std::nullopt};
  if (!options.verify) return result;

  result.iso = materialize_iso(result);
  std::map<int, std::size_t> matched;
  for (const auto& [a, b] : matching.pairs()) {
    ++matched[a.degree];
    ++matched[b.degree];
  }
  for (int d = complex.min_degree(); d <= complex.max_degree(); ++d) {
    if (result.morse_complex.rank(d) + matched[d] != complex.rank(d)) {
      fail("rank bookkeeping fails in degree " + std::to_string(d));
    }
  }
  for (const AcyclicPiece& piece : result.pieces) contraction_homotopy(piece, &group);
  DecompositionReport report = verify_decomposition(result, group);
  if (!report.ok()) fail("decomposition check failed: " + report.problems.front());
  return result;
}

}  // namespace eqmorse
