#include "eqmorse/matching.hpp"

#include <algorithm>
#include <set>

#include "eqmorse/error.hpp"

namespace eqmorse {

Matching::Matching(const std::vector<Pair>& pairs) {
  for (const auto& [a, b] : pairs) insert(a, b);
}

void Matching::insert(const Cell& lower, const Cell& upper) {
  if (upper.degree != lower.degree + 1) {
    throw Error(ErrorKind::contract_violation,
                "matched pair (" + to_string(lower) + ", " + to_string(upper) +
                    ") is not in adjacent degrees");
  }
  if (!pairs_.insert({lower, upper}).second) return;
  partners_[lower].push_back(upper);
  partners_[upper].push_back(lower);
}

void Matching::erase(const Cell& lower, const Cell& upper) {
  if (pairs_.erase({lower, upper}) == 0) return;
  auto drop = [&](const Cell& key, const Cell& value) {
    auto& v = partners_[key];
    v.erase(std::find(v.begin(), v.end(), value));
    if (v.empty()) partners_.erase(key);
  };
  drop(lower, upper);
  drop(upper, lower);
}

std::optional<Cell> Matching::partner(const Cell& cell) const {
  auto it = partners_.find(cell);
  if (it == partners_.end()) return std::nullopt;
  return it->second.front();
}

std::size_t Matching::occurrences(const Cell& cell) const {
  auto it = partners_.find(cell);
  return it == partners_.end() ? 0 : it->second.size();
}

PairOrbit pair_orbit(const GroupAction& group, const Matching::Pair& pair) {
  std::set<Matching::Pair> members;
  for (std::size_t e = 0; e < group.order(); ++e) {
    members.emplace(group.apply(e, pair.first), group.apply(e, pair.second));
  }
  return PairOrbit{{members.begin(), members.end()}};
}

std::vector<PairOrbit> pair_orbits(const Matching& matching, const GroupAction& group) {
  std::vector<PairOrbit> out;
  std::set<Matching::Pair> done;
  for (const auto& pair : matching.pairs()) {
    if (done.contains(pair)) continue;
    PairOrbit o = pair_orbit(group, pair);
    done.insert(o.pairs.begin(), o.pairs.end());
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

std::string pair_text(const Cell& a, const Cell& b) {
  return "(" + to_string(a) + ", " + to_string(b) + ")";
}

std::string path_text(const std::vector<Cell>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? " -> " : "") + to_string(cells[i]);
  return out;
}

}  // namespace

ValidationReport validate(const ChainComplex& complex, const GroupAction& group,
                          const Matching& matching) {
  ValidationReport report;
  const CoverGraph poset = build_cover_graph(complex);
  bool all_known = true;

  for (const auto& [a, b] : matching.pairs()) {
    if (!complex.contains(a) || !complex.contains(b)) {
      all_known = false;
      report.matching_ok = false;
      report.witnesses.push_back(
          {"matching", "pair " + pair_text(a, b) + " names an unknown basis element", {a, b}});
      continue;
    }
    for (const Cell& c : {a, b}) {
      if (matching.occurrences(c) > 1 && matching.partner(c) == (c == a ? b : a)) {
        report.matching_ok = false;
        report.witnesses.push_back(
            {"matching", to_string(c) + " occurs in more than one pair", {c}});
      }
    }
    Scalar w = poset.weight(a, b);
    if (w.is_zero()) {
      report.covering_ok = false;
      report.witnesses.push_back(
          {"covering", "pair " + pair_text(a, b) + " is not a covering relation", {a, b}});
    } else if (!try_invert(w)) {
      report.invertible_ok = false;
      report.witnesses.push_back({"invertible",
                                  "weight " + w.to_string() + " of " + pair_text(a, b) +
                                      " is not a unit in " + complex.ring().name(),
                                  {a, b}});
    }
  }

  if (all_known) {
    auto digraph_cycle = find_matching_cycle(poset, matching);
    if (report.matching_ok && report.covering_ok) {
      auto q = quotient_poset(poset, matching);
      const bool quotient_acyclic = std::holds_alternative<QuotientPoset>(q);
      if (quotient_acyclic == digraph_cycle.has_value()) {
        throw Error(ErrorKind::internal_invariant,
                    "quotient antisymmetry and digraph cycle search disagree");
      }
    }
    if (digraph_cycle) {
      report.acyclic_ok = false;
      report.witnesses.push_back(
          {"acyclic", "alternating cycle " + path_text(*digraph_cycle), *digraph_cycle});
    }

    for (const auto& [a, b] : matching.pairs()) {
      for (std::size_t g = 0; g < group.generator_count(); ++g) {
        Cell ga = group.apply_generator(g, a);
        Cell gb = group.apply_generator(g, b);
        if (!matching.contains(ga, gb)) {
          report.equivariant_ok = false;
          report.witnesses.push_back({"equivariant",
                                      "missing translated pair " + pair_text(ga, gb) + " = " +
                                          group.generator_name(g) + "·" + pair_text(a, b),
                                      {ga, gb}});
        }
      }
    }
  }
  return report;
}

MatchPolicy parse_policy(const std::string& text) {
  if (text == "lex") return MatchPolicy::lexicographic;
  if (text == "max-orbit") return MatchPolicy::max_orbit;
  throw Error(ErrorKind::parse_error, "unknown policy '" + text + "' (expected lex or max-orbit)");
}

Matching greedy_equivariant_match(const ChainComplex& complex, const GroupAction& group,
                                  MatchPolicy policy) {
  const CoverGraph poset = build_cover_graph(complex);

  std::vector<PairOrbit> candidates;
  std::set<Matching::Pair> seen;
  for (const CoverEdge& e : poset.edges()) {
    Matching::Pair pair{e.lower, e.upper};
    if (seen.contains(pair)) continue;
    PairOrbit o = pair_orbit(group, pair);
    seen.insert(o.pairs.begin(), o.pairs.end());
    // The orbit must be a matching on its own, with unit weights throughout.
    std::set<Cell> used;
    bool usable = true;
    for (const auto& [a, b] : o.pairs) {
      if (!used.insert(a).second || !used.insert(b).second || !try_invert(poset.weight(a, b))) {
        usable = false;
        break;
      }
    }
    if (usable) candidates.push_back(std::move(o));
  }
  if (policy == MatchPolicy::max_orbit) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const PairOrbit& x, const PairOrbit& y) {
                       return x.pairs.size() > y.pairs.size();
                     });
  }

  Matching matching;
  for (const PairOrbit& o : candidates) {
    bool free = std::none_of(o.pairs.begin(), o.pairs.end(), [&](const Matching::Pair& p) {
      return matching.is_matched(p.first) || matching.is_matched(p.second);
    });
    if (!free) continue;
    for (const auto& [a, b] : o.pairs) matching.insert(a, b);
    if (has_matching_cycle_in_degrees(poset, matching, o.pairs.front().first.degree)) {
      for (const auto& [a, b] : o.pairs) matching.erase(a, b);
    }
  }
  return matching;
}

QuotientPoset small_fiber_map(const ChainComplex& complex, const Matching& matching,
                              const GroupAction* group) {
  const CoverGraph poset = build_cover_graph(complex);
  auto result = quotient_poset(poset, matching);
  if (auto* witness = std::get_if<std::vector<Cell>>(&result)) {
    throw Error(ErrorKind::acyclicity_failure, "matching has the cycle " + path_text(*witness));
  }
  QuotientPoset q = std::get<QuotientPoset>(std::move(result));

  std::vector<Matching::Pair> expected(matching.pairs().begin(), matching.pairs().end());
  if (q.two_fibers() != expected) {
    throw Error(ErrorKind::internal_invariant, "two-element fibers do not reproduce the matching");
  }
  if (group) {
    for (std::size_t g = 0; g < group->generator_count(); ++g) {
      for (const Cell& x : poset.nodes()) {
        std::set<Cell> moved;
        for (const Cell& y : q.fiber(q.class_of(x))) moved.insert(group->apply_generator(g, y));
        const auto& target = q.fiber(q.class_of(group->apply_generator(g, x)));
        if (moved != std::set<Cell>(target.begin(), target.end())) {
          throw Error(ErrorKind::internal_invariant,
                      "quotient map does not commute with " + group->generator_name(g) + " at " +
                          to_string(x));
        }
      }
    }
  }
  return q;
}

std::vector<VanishingViolation> check_cross_orbit_vanishing(const ChainComplex& complex,
                                                            const GroupAction& group,
                                                            const Matching& matching) {
  std::vector<VanishingViolation> out;
  for (const auto& pair : matching.pairs()) {
    const auto& [a, b] = pair;
    std::set<Cell> translates;
    for (std::size_t e = 0; e < group.order(); ++e) translates.insert(group.apply(e, b));
    for (const Cell& gb : translates) {
      if (gb == b) continue;
      if (!coefficient(a, complex.boundary(gb)).is_zero()) out.push_back({pair, gb});
    }
  }
  return out;
}

}  // namespace eqmorse
