#include "eqmorse/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "eqmorse/error.hpp"

namespace eqmorse::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse_error, where + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

long as_long(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<long>();
}

const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

const Json& as_object(const Json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
  return v;
}

int degree_key(const std::string& key, const std::string& where) {
  int out = 0;
  const char* end = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(key.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(where, "degree key \"" + key + "\" is not an integer");
  return out;
}

void check_format(const Json& v, const std::string& where) {
  as_object(v, where);
  auto it = v.find("format");
  if (it != v.end() && (!it->is_number_integer() || it->get<int>() != format_version)) {
    fail(where, "unsupported format version " + it->dump());
  }
}

RingSpec ring_field(const Json& v, const std::string& where) {
  std::string text = as_string(field(v, "ring", where), where + ".ring");
  try {
    return RingSpec::parse(text);
  } catch (const Error& e) {
    fail(where + ".ring", e.what());
  }
}

Scalar as_scalar(const RingSpec& ring, const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Scalar(ring, v.get<long>());
    if (v.is_string()) return Scalar::parse(ring, v.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a coefficient string");
}

Json cell_json(const Cell& c) { return Json{{"degree", c.degree}, {"label", c.label}}; }

Cell cell_from(const Json& v, const std::string& where) {
  return Cell{static_cast<int>(as_long(field(v, "degree", where), where + ".degree")),
              as_string(field(v, "label", where), where + ".label")};
}

Json big_int(const mpz_class& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

mpz_class big_int_from(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return mpz_class(v.get<long>());
  if (v.is_string()) {
    mpz_class out;
    if (out.set_str(v.get<std::string>(), 10) == 0) return out;
  }
  fail(where, "expected an integer");
}

Json pair_json(const Matching::Pair& p, bool with_degree) {
  Json out = Json::array({p.first.label, p.second.label});
  if (with_degree) out.push_back(p.first.degree);
  return out;
}

Matching::Pair explicit_pair(const Json& v, const std::string& where) {
  as_array(v, where);
  if (v.size() != 3) fail(where, "expected [lower, upper, degree]");
  const int d = static_cast<int>(as_long(v[2], where + "[2]"));
  return {Cell{d, as_string(v[0], where + "[0]")}, Cell{d + 1, as_string(v[1], where + "[1]")}};
}

Json chain_json(const Chain& c) {
  Json out = Json::object();
  for (const auto& [label, coeff] : c.terms()) out[label] = coeff.to_string();
  return out;
}

Chain chain_from(const RingSpec& ring, int degree, const Json& v, const std::string& where) {
  Chain out(ring, degree);
  for (const auto& [label, coeff] : as_object(v, where).items()) {
    out.add_term(label, as_scalar(ring, coeff, where + "." + label));
  }
  return out;
}

Json components_json(const GradedMap& map) {
  Json out = Json::object();
  for (const auto& [n, cols] : map.components) {
    Json deg = Json::object();
    for (const auto& [label, chain] : cols) deg[label] = chain_json(chain);
    out[std::to_string(n)] = std::move(deg);
  }
  return out;
}

GradedMap components_from(const RingSpec& ring, const Json& v, const std::string& where) {
  GradedMap out;
  for (const auto& [key, cols] : as_object(v, where).items()) {
    const int n = degree_key(key, where);
    auto& slot = out.components[n];
    for (const auto& [label, chain] : as_object(cols, where + "." + key).items()) {
      slot.emplace(label, chain_from(ring, n, chain, where + "." + key + "." + label));
    }
  }
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from(const RingSpec& ring, std::size_t rows, std::size_t cols, const Json& v,
                   const std::string& where) {
  as_array(v, where);
  if (v.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
  Matrix out(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string here = where + "[" + std::to_string(r) + "]";
    as_array(v[r], here);
    if (v[r].size() != cols) fail(here, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = as_scalar(ring, v[r][c], here);
  }
  return out;
}

std::vector<std::string> string_list(const Json& v, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) {
    out.push_back(as_string(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json piece_json(const AcyclicPiece& p) {
  return Json{{"degree", p.degree},
              {"top", p.top},
              {"bottom", p.bottom},
              {"boundary_block", matrix_json(p.boundary_block)},
              {"contraction", matrix_json(p.contraction)}};
}

AcyclicPiece piece_from(const RingSpec& ring, const Json& v, const std::string& where) {
  AcyclicPiece p;
  p.degree = static_cast<int>(as_long(field(v, "degree", where), where + ".degree"));
  p.top = string_list(field(v, "top", where), where + ".top");
  p.bottom = string_list(field(v, "bottom", where), where + ".bottom");
  p.boundary_block = matrix_from(ring, p.bottom.size(), p.top.size(),
                                 field(v, "boundary_block", where), where + ".boundary_block");
  p.contraction = matrix_from(ring, p.top.size(), p.bottom.size(), field(v, "contraction", where),
                              where + ".contraction");
  return p;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw Error(ErrorKind::parse_error, source + ": " + location(text, at) + " (offset " +
                                            std::to_string(at) + "): " +
                                            (pos == std::string::npos ? what : what.substr(pos)));
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

Json to_json(const ChainComplex& complex) {
  Json basis = Json::object();
  Json boundary = Json::object();
  for (int n = complex.min_degree(); n <= complex.max_degree(); ++n) {
    basis[std::to_string(n)] = complex.basis(n);
    if (n == complex.min_degree()) continue;
    Json deg = Json::object();
    for (const auto& label : complex.basis(n)) {
      const Chain& d = complex.boundary(Cell{n, label});
      if (!d.is_zero()) deg[label] = chain_json(d);
    }
    if (!deg.empty()) boundary[std::to_string(n)] = std::move(deg);
  }
  return Json{{"format", format_version},
              {"ring", complex.ring().name()},
              {"degrees", {complex.min_degree(), complex.max_degree()}},
              {"basis", std::move(basis)},
              {"boundary", std::move(boundary)}};
}

ChainComplex complex_from_json(const Json& value) {
  const std::string where = "complex";
  check_format(value, where);
  const RingSpec ring = ring_field(value, where);
  const Json& degrees = as_array(field(value, "degrees", where), where + ".degrees");
  if (degrees.size() != 2) fail(where + ".degrees", "expected [d_min, d_max]");
  const int lo = static_cast<int>(as_long(degrees[0], where + ".degrees[0]"));
  const int hi = static_cast<int>(as_long(degrees[1], where + ".degrees[1]"));
  ChainComplex::Basis basis;
  for (const auto& [key, labels] : as_object(field(value, "basis", where), where + ".basis").items()) {
    basis[degree_key(key, where + ".basis")] = string_list(labels, where + ".basis." + key);
  }
  ChainComplex::Boundary boundary;
  if (value.contains("boundary")) {
    for (const auto& [key, cols] : as_object(value["boundary"], where + ".boundary").items()) {
      const int n = degree_key(key, where + ".boundary");
      auto& slot = boundary[n];
      for (const auto& [label, chain] : as_object(cols, where + ".boundary." + key).items()) {
        slot.emplace(label, chain_from(ring, n - 1, chain, where + ".boundary." + key + "." + label));
      }
    }
  }
  return ChainComplex(ring, lo, hi, std::move(basis), std::move(boundary));
}

Json to_json(const std::vector<Permutation>& generators) {
  Json gens = Json::array();
  for (const auto& g : generators) {
    Json maps = Json::object();
    for (const auto& [n, m] : g.maps) {
      if (!m.empty()) maps[std::to_string(n)] = m;
    }
    gens.push_back(Json{{"name", g.name}, {"maps", std::move(maps)}});
  }
  return Json{{"format", format_version}, {"generators", std::move(gens)}};
}

std::vector<Permutation> generators_from_json(const Json& value) {
  const std::string where = "group";
  check_format(value, where);
  const Json& gens = as_array(field(value, "generators", where), where + ".generators");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string here = where + ".generators[" + std::to_string(i) + "]";
    Permutation p;
    p.name = as_string(field(gens[i], "name", here), here + ".name");
    for (const auto& [key, m] : as_object(field(gens[i], "maps", here), here + ".maps").items()) {
      auto& slot = p.maps[degree_key(key, here + ".maps")];
      for (const auto& [from, to] : as_object(m, here + ".maps." + key).items()) {
        slot[from] = as_string(to, here + ".maps." + key + "." + from);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::vector<int> placements(const ChainComplex& complex, const std::string& lower,
                            const std::string& upper) {
  std::vector<int> out;
  for (int d = complex.min_degree(); d < complex.max_degree(); ++d) {
    if (complex.contains(Cell{d, lower}) && complex.contains(Cell{d + 1, upper})) out.push_back(d);
  }
  return out;
}

}  // namespace

Json to_json(const Matching& matching, const ChainComplex& complex) {
  Json pairs = Json::array();
  for (const auto& p : matching.pairs()) {
    pairs.push_back(pair_json(p, placements(complex, p.first.label, p.second.label).size() != 1));
  }
  return Json{{"format", format_version}, {"pairs", std::move(pairs)}};
}

Matching matching_from_json(const Json& value, const ChainComplex& complex) {
  const std::string where = "matching";
  check_format(value, where);
  const Json& pairs = as_array(field(value, "pairs", where), where + ".pairs");
  Matching out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string here = where + ".pairs[" + std::to_string(i) + "]";
    const Json& p = as_array(pairs[i], here);
    if (p.size() == 3) {
      auto [lower, upper] = explicit_pair(p, here);
      out.insert(lower, upper);
      continue;
    }
    if (p.size() != 2) fail(here, "expected [lower, upper] or [lower, upper, degree]");
    const std::string lower = as_string(p[0], here + "[0]");
    const std::string upper = as_string(p[1], here + "[1]");
    auto degrees = placements(complex, lower, upper);
    if (degrees.empty()) {
      throw Error(ErrorKind::unknown_basis_element,
                  here + ": no degree n has " + lower + " in degree n and " + upper + " in degree n+1");
    }
    if (degrees.size() > 1) {
      throw Error(ErrorKind::contract_violation,
                  here + ": pair is ambiguous; give the lower degree as a third entry");
    }
    out.insert(Cell{degrees[0], lower}, Cell{degrees[0] + 1, upper});
  }
  return out;
}

Json to_json(const HomologyProfile& profile) {
  Json out = Json::object();
  for (const auto& [n, h] : profile.degrees) {
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(big_int(t));
    out[std::to_string(n)] = Json{{"betti", h.betti}, {"torsion", std::move(torsion)}};
  }
  return out;
}

HomologyProfile homology_from_json(const Json& value) {
  const std::string where = "homology";
  HomologyProfile out;
  for (const auto& [key, h] : as_object(value, where).items()) {
    const std::string here = where + "." + key;
    DegreeHomology d;
    const long betti = as_long(field(h, "betti", here), here + ".betti");
    if (betti < 0) fail(here + ".betti", "negative Betti number");
    d.betti = static_cast<std::size_t>(betti);
    const Json& torsion = as_array(field(h, "torsion", here), here + ".torsion");
    for (const auto& t : torsion) d.torsion.push_back(big_int_from(t, here + ".torsion"));
    out.degrees.emplace(degree_key(key, where), std::move(d));
  }
  return out;
}

Json to_json(const ValidationReport& report) {
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json cells = Json::array();
    for (const auto& c : w.cells) cells.push_back(cell_json(c));
    witnesses.push_back(Json{{"check", w.check}, {"detail", w.detail}, {"cells", std::move(cells)}});
  }
  return Json{{"format", format_version},
              {"all_ok", report.all_ok()},
              {"matching", report.matching_ok},
              {"covering", report.covering_ok},
              {"invertible", report.invertible_ok},
              {"acyclic", report.acyclic_ok},
              {"equivariant", report.equivariant_ok},
              {"witnesses", std::move(witnesses)}};
}

Json to_json(const GradedMap& map, const RingSpec& ring) {
  return Json{{"format", format_version}, {"ring", ring.name()}, {"components", components_json(map)}};
}

GradedMap graded_map_from_json(const Json& value) {
  const std::string where = "map";
  check_format(value, where);
  return components_from(ring_field(value, where), field(value, "components", where),
                         where + ".components");
}

Json to_json(const std::vector<AcyclicPiece>& pieces, const RingSpec& ring) {
  Json list = Json::array();
  for (const auto& p : pieces) list.push_back(piece_json(p));
  return Json{{"format", format_version}, {"ring", ring.name()}, {"pieces", std::move(list)}};
}

std::vector<AcyclicPiece> pieces_from_json(const Json& value) {
  const std::string where = "pieces";
  check_format(value, where);
  const RingSpec ring = ring_field(value, where);
  const Json& list = as_array(field(value, "pieces", where), where + ".pieces");
  std::vector<AcyclicPiece> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(piece_from(ring, list[i], where + ".pieces[" + std::to_string(i) + "]"));
  }
  return out;
}

Json to_json(const std::vector<ReductionStep>& steps, const RingSpec& ring) {
  Json list = Json::array();
  for (const auto& s : steps) {
    Json orbit = Json::array();
    for (const auto& p : s.eliminated_orbit.pairs) orbit.push_back(pair_json(p, true));
    Json induced = Json::array();
    for (const auto& p : s.induced_matching.pairs()) induced.push_back(pair_json(p, true));
    Json weights = Json::array();
    for (const auto& w : s.weight_report) {
      weights.push_back(Json{{"upper", cell_json(w.upper)},
                             {"lower", cell_json(w.lower)},
                             {"before", w.before.to_string()},
                             {"after", w.after.to_string()}});
    }
    list.push_back(Json{{"index", s.index},
                        {"degree", s.degree},
                        {"eliminated_orbit", std::move(orbit)},
                        {"f_lower", components_json(s.f_lower)},
                        {"f_upper", components_json(s.f_upper)},
                        {"piece", piece_json(s.piece)},
                        {"induced_matching", std::move(induced)},
                        {"residual", to_json(s.residual)},
                        {"weight_report", std::move(weights)}});
  }
  return Json{{"format", format_version}, {"ring", ring.name()}, {"steps", std::move(list)}};
}

std::vector<ReductionStep> steps_from_json(const Json& value) {
  const std::string where = "steps";
  check_format(value, where);
  const RingSpec ring = ring_field(value, where);
  const Json& list = as_array(field(value, "steps", where), where + ".steps");
  std::vector<ReductionStep> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string here = where + ".steps[" + std::to_string(i) + "]";
    const Json& s = as_object(list[i], here);
    PairOrbit orbit;
    const Json& pairs = as_array(field(s, "eliminated_orbit", here), here + ".eliminated_orbit");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      orbit.pairs.push_back(explicit_pair(pairs[k], here + ".eliminated_orbit"));
    }
    Matching induced;
    for (const auto& p : as_array(field(s, "induced_matching", here), here + ".induced_matching")) {
      auto [lower, upper] = explicit_pair(p, here + ".induced_matching");
      induced.insert(lower, upper);
    }
    std::vector<WeightViolation> weights;
    for (const auto& w : as_array(field(s, "weight_report", here), here + ".weight_report")) {
      weights.push_back(WeightViolation{cell_from(field(w, "upper", here), here),
                                        cell_from(field(w, "lower", here), here),
                                        as_scalar(ring, field(w, "before", here), here),
                                        as_scalar(ring, field(w, "after", here), here)});
    }
    const long index = as_long(field(s, "index", here), here + ".index");
    if (index < 1) fail(here + ".index", "step indices start at 1");
    out.push_back(ReductionStep{
        static_cast<std::size_t>(index),
        static_cast<int>(as_long(field(s, "degree", here), here + ".degree")),
        std::move(orbit),
        components_from(ring, field(s, "f_lower", here), here + ".f_lower"),
        components_from(ring, field(s, "f_upper", here), here + ".f_upper"),
        piece_from(ring, field(s, "piece", here), here + ".piece"),
        std::move(induced),
        complex_from_json(field(s, "residual", here)),
        std::move(weights)});
  }
  return out;
}

Json to_json(const ReductionResult& result) {
  const RingSpec& ring = result.input.ring();
  return Json{{"format", format_version},
              {"input", to_json(result.input)},
              {"morse_complex", to_json(result.morse_complex)},
              {"pieces", to_json(result.pieces, ring)},
              {"iso", result.iso ? to_json(*result.iso, ring) : Json(nullptr)},
              {"steps", to_json(result.steps, ring)}};
}

ReductionResult reduction_from_json(const Json& value) {
  const std::string where = "reduction";
  check_format(value, where);
  std::optional<GradedMap> iso;
  const Json& iso_json = field(value, "iso", where);
  if (!iso_json.is_null()) iso = graded_map_from_json(iso_json);
  return ReductionResult{complex_from_json(field(value, "input", where)),
                         complex_from_json(field(value, "morse_complex", where)),
                         pieces_from_json(field(value, "pieces", where)),
                         steps_from_json(field(value, "steps", where)), std::move(iso)};
}

Json to_json(const SimplicialInput& input) {
  Json gens = Json::array();
  for (const auto& g : input.generators) gens.push_back(Json{{"name", g.name}, {"map", g.map}});
  return Json{{"format", format_version},
              {"ring", input.ring.name()},
              {"vertices", input.vertices},
              {"facets", input.facets},
              {"generators", std::move(gens)}};
}

SimplicialInput simplicial_from_json(const Json& value) {
  const std::string where = "simplicial";
  check_format(value, where);
  SimplicialInput out;
  out.ring = value.contains("ring") ? ring_field(value, where) : RingSpec::integers();
  out.vertices = string_list(field(value, "vertices", where), where + ".vertices");
  const Json& facets = as_array(field(value, "facets", where), where + ".facets");
  for (std::size_t i = 0; i < facets.size(); ++i) {
    out.facets.push_back(string_list(facets[i], where + ".facets[" + std::to_string(i) + "]"));
  }
  if (value.contains("generators")) {
    const Json& gens = as_array(value["generators"], where + ".generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string here = where + ".generators[" + std::to_string(i) + "]";
      VertexPermutation g;
      g.name = as_string(field(gens[i], "name", here), here + ".name");
      for (const auto& [from, to] : as_object(field(gens[i], "map", here), here + ".map").items()) {
        g.map[from] = as_string(to, here + ".map." + from);
      }
      out.generators.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace eqmorse::io
