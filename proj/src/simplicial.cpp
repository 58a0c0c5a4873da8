#include "eqmorse/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "eqmorse/error.hpp"

namespace eqmorse {

namespace {

using Simplex = std::vector<std::size_t>;  // sorted vertex indices

// Orders by dimension first, then by vertex tuple.
struct SimplexOrder {
  bool operator()(const Simplex& a, const Simplex& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

int sort_sign(Simplex& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[j] < t[i]) sign = -sign;
    }
  }
  std::sort(t.begin(), t.end());
  return sign;
}

}  // namespace

std::string simplex_label(const std::vector<std::string>& sorted_vertices) {
  std::string out;
  for (std::size_t i = 0; i < sorted_vertices.size(); ++i) {
    if (i) out += '|';
    out += sorted_vertices[i];
  }
  return out;
}

SimplicialComplex ingest_simplicial(const SimplicialInput& input) {
  std::unordered_map<std::string, std::size_t> vertex_index;
  for (const auto& v : input.vertices) {
    if (v.empty() || v.find('|') != std::string::npos) {
      throw Error(ErrorKind::contract_violation, "invalid vertex label '" + v + "'");
    }
    if (!vertex_index.emplace(v, vertex_index.size()).second) {
      throw Error(ErrorKind::contract_violation, "duplicate vertex '" + v + "'");
    }
  }

  std::set<Simplex, SimplexOrder> simplices;
  for (std::size_t i = 0; i < input.vertices.size(); ++i) simplices.insert({i});
  for (const auto& facet : input.facets) {
    if (facet.empty()) throw Error(ErrorKind::contract_violation, "empty facet");
    Simplex s;
    for (const auto& v : facet) {
      auto it = vertex_index.find(v);
      if (it == vertex_index.end()) {
        throw Error(ErrorKind::contract_violation, "facet uses unknown vertex '" + v + "'");
      }
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorKind::contract_violation, "facet repeats a vertex");
    }
    // every nonempty face
    const std::size_t k = s.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1UL << i)) face.push_back(s[i]);
      }
      simplices.insert(std::move(face));
    }
  }

  auto label_of = [&](const Simplex& s) {
    std::vector<std::string> names;
    for (auto i : s) names.push_back(input.vertices[i]);
    return simplex_label(names);
  };

  // vertex maps as index vectors
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& g : input.generators) {
    std::vector<std::size_t> image(input.vertices.size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = i;
    for (const auto& [from, to] : g.map) {
      auto f = vertex_index.find(from);
      auto t = vertex_index.find(to);
      if (f == vertex_index.end() || t == vertex_index.end()) {
        throw Error(ErrorKind::non_simplicial_generator,
                    "generator '" + g.name + "' maps unknown vertex '" +
                        (f == vertex_index.end() ? from : to) + "'");
      }
      image[f->second] = t->second;
    }
    std::vector<char> hit(image.size(), 0);
    for (auto i : image) {
      if (hit[i]) {
        throw Error(ErrorKind::non_simplicial_generator,
                    "generator '" + g.name + "' is not a bijection of the vertices");
      }
      hit[i] = 1;
    }
    for (const auto& s : simplices) {
      Simplex t;
      for (auto i : s) t.push_back(image[i]);
      std::sort(t.begin(), t.end());
      if (!simplices.contains(t)) {
        throw Error(ErrorKind::non_simplicial_generator,
                    "generator '" + g.name + "' maps simplex " + label_of(s) + " to a non-simplex");
      }
    }
    gens.push_back(std::move(image));
  }

  const bool signs_vanish = input.ring.kind() == RingKind::modular && input.ring.modulus() == 2;
  std::map<Simplex, int> sign;
  for (const auto& start : simplices) {
    if (sign.contains(start)) continue;
    sign[start] = 1;
    std::deque<Simplex> queue{start};
    while (!queue.empty()) {
      Simplex u = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Simplex t;
        for (auto i : u) t.push_back(gens[g][i]);
        const int s = sign[u] * sort_sign(t);
        auto [it, fresh] = sign.emplace(t, s);
        if (fresh) {
          queue.push_back(t);
        } else if (it->second != s && !signs_vanish) {
          throw Error(ErrorKind::orientation_reversing_action,
                      "generator '" + input.generators[g].name + "' reverses the orientation of " +
                          label_of(t) + " over " + input.ring.name() +
                          "; use ring mod:2 or a group that preserves orientations");
        }
      }
    }
  }

  const RingSpec ring = input.ring;
  int max_dim = 0;
  ChainComplex::Basis basis;
  ChainComplex::Boundary boundary;
  for (const auto& s : simplices) {
    const int dim = static_cast<int>(s.size()) - 1;
    max_dim = std::max(max_dim, dim);
    const std::string label = label_of(s);
    basis[dim].push_back(label);
    if (dim == 0) continue;
    Chain d(ring, dim - 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      const long c = static_cast<long>(sign.at(s)) * sign.at(face) * (i % 2 == 0 ? 1 : -1);
      d.add_term(label_of(face), Scalar(ring, c));
    }
    boundary[dim].emplace(label, std::move(d));
  }
  if (simplices.empty()) basis[0];
  ChainComplex complex(ring, 0, max_dim, std::move(basis), std::move(boundary));

  std::vector<Permutation> perms;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Permutation p{input.generators[g].name, {}};
    for (const auto& s : simplices) {
      Simplex t;
      for (auto i : s) t.push_back(gens[g][i]);
      std::sort(t.begin(), t.end());
      if (t != s) p.maps[static_cast<int>(s.size()) - 1][label_of(s)] = label_of(t);
    }
    perms.push_back(std::move(p));
  }
  GroupAction group = close_generators(complex, perms);
  return SimplicialComplex{std::move(complex), std::move(group), std::move(perms)};
}

}  // namespace eqmorse
