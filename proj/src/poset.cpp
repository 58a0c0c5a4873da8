#include "eqmorse/poset.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "eqmorse/error.hpp"
#include "eqmorse/matching.hpp"

namespace eqmorse {

// --- CoverGraph -------------------------------------------------------------

std::size_t CoverGraph::node_index(const Cell& cell) const {
  auto it = index_.find(cell);
  if (it == index_.end()) {
    throw Error(ErrorKind::unknown_basis_element, "poset has no node " + to_string(cell));
  }
  return it->second;
}

Scalar CoverGraph::weight(const Cell& a, const Cell& b) const {
  auto it = edge_index_.find({node_index(a), node_index(b)});
  if (it == edge_index_.end()) return Scalar(ring_);
  return edges_[it->second].weight;
}

CoverGraph build_cover_graph(const ChainComplex& complex) {
  CoverGraph p;
  p.ring_ = complex.ring();
  p.nodes_ = complex.cells();  // sorted by (degree, label), so index order is cell order
  std::map<int, std::size_t> offset;
  for (std::size_t i = 0; i < p.nodes_.size(); ++i) {
    p.index_.emplace_hint(p.index_.end(), p.nodes_[i], i);
    offset.try_emplace(p.nodes_[i].degree, i);
  }
  p.up_.resize(p.nodes_.size());
  p.down_.resize(p.nodes_.size());
  struct Raw {
    std::size_t lo, hi;
    const Scalar* weight;
  };
  std::vector<Raw> raw;
  for (std::size_t hi = 0; hi < p.nodes_.size(); ++hi) {
    const Cell& upper = p.nodes_[hi];
    for (const auto& [label, c] : complex.boundary(upper).terms()) {
      raw.push_back({offset.at(upper.degree - 1) + *complex.index_of(upper.degree - 1, label), hi, &c});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
    return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
  });
  p.edges_.reserve(raw.size());
  for (std::size_t e = 0; e < raw.size(); ++e) {
    p.edges_.push_back({p.nodes_[raw[e].lo], p.nodes_[raw[e].hi], *raw[e].weight});
    p.up_[raw[e].lo].push_back(raw[e].hi);
    p.down_[raw[e].hi].push_back(raw[e].lo);
    p.edge_index_.emplace_hint(p.edge_index_.end(), std::make_pair(raw[e].lo, raw[e].hi), e);
  }
  for (auto& v : p.down_) std::sort(v.begin(), v.end());
  return p;
}

bool leq(const CoverGraph& poset, const Cell& x, const Cell& y) {
  if (x == y) return true;
  if (x.degree >= y.degree) return false;
  const std::size_t target = poset.node_index(y);
  std::vector<char> seen(poset.nodes().size(), 0);
  std::deque<std::size_t> queue{poset.node_index(x)};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : poset.up(u)) {
      if (v == target) return true;
      if (!seen[v] && poset.nodes()[v].degree < y.degree) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

// --- matching digraph -------------------------------------------------------

namespace {

// Adjacency of the matching digraph, neighbours sorted by node index.
std::vector<std::vector<std::size_t>> matching_digraph(const CoverGraph& poset,
                                                       const Matching& matching) {
  const auto& nodes = poset.nodes();
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (std::size_t lo = 0; lo < nodes.size(); ++lo) {
    for (std::size_t hi : poset.up(lo)) {
      if (matching.is_matched(nodes[lo]) && matching.contains(nodes[lo], nodes[hi])) {
        out[lo].push_back(hi);
      } else {
        out[hi].push_back(lo);
      }
    }
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

void require_matching_shape(const CoverGraph& poset, const Matching& matching) {
  for (const auto& [a, b] : matching.pairs()) {
    if (!poset.has_node(a) || !poset.has_node(b)) {
      throw Error(ErrorKind::unknown_basis_element,
                  "matched pair (" + to_string(a) + ", " + to_string(b) + ") leaves the complex");
    }
    if (poset.weight(a, b).is_zero()) {
      throw Error(ErrorKind::contract_violation,
                  "matched pair (" + to_string(a) + ", " + to_string(b) + ") is not a cover");
    }
    if (matching.occurrences(a) > 1 || matching.occurrences(b) > 1) {
      throw Error(ErrorKind::contract_violation,
                  "element of (" + to_string(a) + ", " + to_string(b) + ") is matched twice");
    }
  }
}

}  // namespace

std::optional<std::vector<Cell>> find_matching_cycle(const CoverGraph& poset,
                                                     const Matching& matching) {
  const auto adj = matching_digraph(poset, matching);
  const std::size_t n = adj.size();

  // Peel sources and sinks; whatever survives is exactly the union of the
  // nodes that can reach a cycle and be reached from one.
  std::vector<std::size_t> in(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::size_t>> radj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : adj[u]) {
      ++outdeg[u];
      ++in[v];
      radj[v].push_back(u);
    }
  }
  std::vector<char> removed(n, 0);
  std::deque<std::size_t> peel;
  for (std::size_t u = 0; u < n; ++u) {
    if (in[u] == 0 || outdeg[u] == 0) {
      removed[u] = 1;
      peel.push_back(u);
    }
  }
  while (!peel.empty()) {
    std::size_t u = peel.front();
    peel.pop_front();
    for (std::size_t v : adj[u]) {
      if (!removed[v] && --in[v] == 0) {
        removed[v] = 1;
        peel.push_back(v);
      }
    }
    for (std::size_t v : radj[u]) {
      if (!removed[v] && --outdeg[v] == 0) {
        removed[v] = 1;
        peel.push_back(v);
      }
    }
  }
  if (std::find(removed.begin(), removed.end(), 0) == removed.end()) return std::nullopt;

  std::optional<std::vector<std::size_t>> best;
  for (std::size_t s = 0; s < n; ++s) {
    if (removed[s]) continue;
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> dist(n, 0);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    bool found = false;
    std::size_t last = n;
    while (!queue.empty() && !found) {
      std::size_t u = queue.front();
      queue.pop_front();
      if (best && dist[u] + 2 >= best->size()) break;
      for (std::size_t v : adj[u]) {
        if (v == s) {
          found = true;
          last = u;
          break;
        }
        if (!seen[v]) {
          seen[v] = 1;
          parent[v] = u;
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    if (!found) continue;
    std::vector<std::size_t> path;
    for (std::size_t v = last; v != s; v = parent[v]) path.push_back(v);
    path.push_back(s);
    std::reverse(path.begin(), path.end());
    path.push_back(s);
    // path has length+1 entries; keep the strictly shorter one.
    if (!best || path.size() < best->size()) best = std::move(path);
  }
  if (!best) return std::nullopt;
  std::vector<Cell> out;
  for (std::size_t i : *best) out.push_back(poset.nodes()[i]);
  return out;
}

bool has_matching_cycle_in_degrees(const CoverGraph& poset, const Matching& matching, int lower) {
  const auto adj = matching_digraph(poset, matching);
  const std::size_t n = adj.size();
  auto inside = [&](std::size_t i) {
    int d = poset.nodes()[i].degree;
    return d == lower || d == lower + 1;
  };
  std::vector<char> color(n, 0);  // 0 white, 1 on stack, 2 done
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] || !inside(root)) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < adj[u].size()) {
        std::size_t v = adj[u][next++];
        if (!inside(v)) continue;
        if (color[v] == 1) return true;
        if (color[v] == 0) {
          color[v] = 1;
          stack.push_back({v, 0});
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

// --- QuotientPoset ----------------------------------------------------------

std::size_t QuotientPoset::class_of(const Cell& cell) const {
  auto it = class_of_.find(cell);
  if (it == class_of_.end()) {
    throw Error(ErrorKind::unknown_basis_element, "quotient has no element " + to_string(cell));
  }
  return it->second;
}

std::vector<std::pair<Cell, Cell>> QuotientPoset::two_fibers() const {
  std::vector<std::pair<Cell, Cell>> out;
  for (const auto& f : fibers_) {
    if (f.size() == 2) out.emplace_back(f[0], f[1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::variant<QuotientPoset, std::vector<Cell>> quotient_poset(const CoverGraph& poset,
                                                              const Matching& matching) {
  require_matching_shape(poset, matching);
  QuotientPoset q;
  for (const Cell& cell : poset.nodes()) {
    if (q.class_of_.contains(cell)) continue;
    std::vector<Cell> fiber{cell};
    if (auto other = matching.partner(cell)) fiber.push_back(*other);
    std::sort(fiber.begin(), fiber.end());
    for (const Cell& c : fiber) q.class_of_.emplace(c, q.fibers_.size());
    q.fibers_.push_back(std::move(fiber));
  }
  const std::size_t n = q.fibers_.size();
  std::set<std::pair<std::size_t, std::size_t>> rel;
  for (const CoverEdge& e : poset.edges()) {
    std::size_t p = q.class_of_.at(e.lower);
    std::size_t r = q.class_of_.at(e.upper);
    if (p != r) rel.emplace(p, r);
  }
  q.relations_.assign(rel.begin(), rel.end());

  // Kahn's algorithm; leftover classes mean the glued relation has a cycle.
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [p, r] : q.relations_) {
    succ[p].push_back(r);
    ++indeg[r];
  }
  std::vector<std::size_t> order;
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    std::size_t u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (std::size_t v : succ[u]) {
      if (--indeg[v] == 0) ready.push_back(v);
    }
  }
  if (order.size() != n) {
    auto witness = find_matching_cycle(poset, matching);
    if (!witness) {
      throw Error(ErrorKind::internal_invariant,
                  "quotient is not antisymmetric but the matching digraph has no cycle");
    }
    return std::move(*witness);
  }

  q.below_.assign(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::size_t>> pred(n);
  for (auto [p, r] : q.relations_) pred[r].push_back(p);
  for (std::size_t r : order) {
    q.below_[r][r] = 1;
    for (std::size_t p : pred[r]) {
      for (std::size_t k = 0; k < n; ++k) q.below_[r][k] |= q.below_[p][k];
    }
  }
  return q;
}

// --- Remark: orbits are antichains ------------------------------------------

std::vector<IncomparabilityViolation> check_orbit_incomparability(const CoverGraph& poset,
                                                                  const GroupAction& group) {
  std::vector<IncomparabilityViolation> out;
  std::set<Cell> done;
  for (const Cell& cell : poset.nodes()) {
    if (done.contains(cell)) continue;
    Orbit o = orbit(group, cell);
    done.insert(o.members.begin(), o.members.end());
    for (const Cell& x : o.members) {
      for (const Cell& y : o.members) {
        if (x != y && leq(poset, x, y)) out.push_back({x, y});
      }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> check_orbit_incomparability(
    const QuotientPoset& quotient, const GroupAction& group) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < quotient.size(); ++p) {
    for (std::size_t e = 1; e < group.order(); ++e) {
      std::size_t r = quotient.class_of(group.apply(e, quotient.fiber(p).front()));
      if (r == p) continue;
      if (quotient.leq(p, r) || quotient.leq(r, p)) out.emplace(std::min(p, r), std::max(p, r));
    }
  }
  return {out.begin(), out.end()};
}

// --- DOT --------------------------------------------------------------------

namespace {

std::string dot_id(const Cell& cell) {
  std::string out = "\"" + std::to_string(cell.degree) + ":";
  for (char c : cell.label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const CoverGraph& poset, const Matching* matching) {
  std::ostringstream os;
  os << "digraph cover {\n  rankdir=BT;\n";
  for (const Cell& cell : poset.nodes()) os << "  " << dot_id(cell) << ";\n";
  for (const CoverEdge& e : poset.edges()) {
    os << "  " << dot_id(e.lower) << " -> " << dot_id(e.upper) << " [label=\""
       << e.weight.to_string() << "\"";
    if (matching && matching->contains(e.lower, e.upper)) os << ", color=red, penwidth=2";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const QuotientPoset& quotient) {
  std::ostringstream os;
  os << "digraph quotient {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < quotient.size(); ++i) {
    os << "  q" << i << " [label=\"";
    const auto& f = quotient.fiber(i);
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << f[k].label;
    os << "\"" << (quotient.is_two_fiber(i) ? ", shape=box" : "") << "];\n";
  }
  for (auto [p, r] : quotient.relations()) os << "  q" << p << " -> q" << r << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace eqmorse
