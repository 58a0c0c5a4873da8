#include "eqmorse/action.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "eqmorse/error.hpp"

namespace eqmorse {

std::string Permutation::apply(int degree, const std::string& label) const {
  auto deg = maps.find(degree);
  if (deg == maps.end()) return label;
  auto it = deg->second.find(label);
  return it == deg->second.end() ? label : it->second;
}

GroupAction GroupAction::trivial(const ChainComplex& complex) { return close_generators(complex, {}); }

std::size_t GroupAction::index(const Cell& cell) const {
  auto it = index_.find(cell);
  if (it == index_.end()) {
    throw Error(ErrorKind::unknown_basis_element,
                "group action does not know " + to_string(cell));
  }
  return it->second;
}

Cell GroupAction::apply_generator(std::size_t g, const Cell& cell) const {
  return cells_[generators_.at(g)[index(cell)]];
}

Cell GroupAction::apply(std::size_t element, const Cell& cell) const {
  return cells_[elements_.at(element)[index(cell)]];
}

Chain GroupAction::apply_generator(std::size_t g, const Chain& chain) const {
  Chain out(chain.ring(), chain.degree());
  for (const auto& [label, c] : chain.terms()) {
    out.add_term(apply_generator(g, Cell{chain.degree(), label}).label, c);
  }
  return out;
}

Chain GroupAction::apply(std::size_t element, const Chain& chain) const {
  Chain out(chain.ring(), chain.degree());
  for (const auto& [label, c] : chain.terms()) {
    out.add_term(apply(element, Cell{chain.degree(), label}).label, c);
  }
  return out;
}

std::vector<Permutation> GroupAction::generator_permutations() const {
  std::vector<Permutation> out;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    Permutation p{names_[g], {}};
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell& image = cells_[generators_[g][i]];
      if (image.label != cells_[i].label) p.maps[cells_[i].degree][cells_[i].label] = image.label;
    }
    out.push_back(std::move(p));
  }
  return out;
}

GroupAction GroupAction::restricted_to(const ChainComplex& complex) const {
  std::vector<Permutation> gens;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    Permutation p{names_[g], {}};
    for (const Cell& cell : complex.cells()) {
      Cell image = apply_generator(g, cell);
      if (!complex.contains(image)) {
        throw Error(ErrorKind::contract_violation,
                    "subcomplex is not stable under generator " + names_[g] + ": " +
                        to_string(cell) + " maps to " + to_string(image));
      }
      if (image.label != cell.label) p.maps[cell.degree][cell.label] = image.label;
    }
    gens.push_back(std::move(p));
  }
  return close_generators(complex, gens, std::max(order(), std::size_t{1}));
}

GroupAction close_generators(const ChainComplex& complex, const std::vector<Permutation>& generators,
                             std::size_t cap) {
  GroupAction action;
  action.cells_ = complex.cells();
  for (std::size_t i = 0; i < action.cells_.size(); ++i) action.index_.emplace(action.cells_[i], i);
  const std::size_t n = action.cells_.size();

  for (const Permutation& p : generators) {
    for (const auto& [degree, map] : p.maps) {
      for (const auto& [from, to] : map) {
        if (!complex.contains(Cell{degree, from}) || !complex.contains(Cell{degree, to})) {
          throw Error(ErrorKind::generator_not_bijective,
                      "generator " + p.name + " maps " + to_string(Cell{degree, from}) + " to " +
                          to_string(Cell{degree, to}) + ", which is not a pair of basis elements");
        }
      }
    }
    GroupAction::IndexPerm perm(n);
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const Cell& cell = action.cells_[i];
      std::size_t j = action.index_.at(Cell{cell.degree, p.apply(cell.degree, cell.label)});
      if (hit[j]) {
        throw Error(ErrorKind::generator_not_bijective,
                    "generator " + p.name + " hits " + to_string(action.cells_[j]) + " twice");
      }
      hit[j] = true;
      perm[i] = j;
    }
    action.names_.push_back(p.name);
    action.generators_.push_back(std::move(perm));
  }

  GroupAction::IndexPerm id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<GroupAction::IndexPerm> seen{id};
  action.elements_.push_back(id);
  for (std::size_t k = 0; k < action.elements_.size(); ++k) {
    for (const auto& gen : action.generators_) {
      GroupAction::IndexPerm next(n);
      const auto& e = action.elements_[k];
      for (std::size_t i = 0; i < n; ++i) next[i] = gen[e[i]];
      if (seen.insert(next).second) {
        if (action.elements_.size() >= cap) {
          throw Error(ErrorKind::closure_overflow,
                      "group closure exceeds " + std::to_string(cap) + " elements");
        }
        action.elements_.push_back(std::move(next));
      }
    }
  }
  return action;
}

std::vector<GMapViolation> verify_g_map(const ChainComplex& complex, const GroupAction& group) {
  std::vector<GMapViolation> out;
  const auto cells = complex.cells();
  for (std::size_t g = 0; g < group.generator_count(); ++g) {
    for (const Cell& b : cells) {
      const Chain& lhs = complex.boundary(group.apply_generator(g, b));
      Chain rhs = group.apply_generator(g, complex.boundary(b));
      if (!(lhs == rhs)) out.push_back({group.generator_name(g), b});
    }
  }
  if (group.order() > 1) {
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<std::size_t> pick(1, group.order() - 1);
    for (int k = 0; k < 5; ++k) {
      std::size_t e = pick(rng);
      for (const Cell& b : cells) {
        if (!(complex.boundary(group.apply(e, b)) == group.apply(e, complex.boundary(b)))) {
          out.push_back({"element#" + std::to_string(e), b});
        }
      }
    }
  }
  return out;
}

Orbit orbit(const GroupAction& group, const Cell& cell) {
  std::set<Cell> members;
  for (std::size_t e = 0; e < group.order(); ++e) members.insert(group.apply(e, cell));
  Orbit out{*members.begin(), {members.begin(), members.end()}};
  return out;
}

std::vector<Orbit> orbits(const GroupAction& group, const ChainComplex& complex) {
  std::vector<Orbit> out;
  std::set<Cell> done;
  for (const Cell& cell : complex.cells()) {
    if (done.contains(cell)) continue;
    Orbit o = orbit(group, cell);
    done.insert(o.members.begin(), o.members.end());
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace eqmorse
