// Command-line front end: validate, match, check-matching, reduce, homology,
// verify and ingest. Exit codes: 0 success, 1 semantic failure, 2 bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eqmorse/error.hpp"
#include "eqmorse/homology.hpp"
#include "eqmorse/io.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/poset.hpp"
#include "eqmorse/reduce.hpp"
#include "eqmorse/simplicial.hpp"

namespace fs = std::filesystem;
using namespace eqmorse;
using io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_input = 2;

// Thrown for problems with the command line or the input files; anything
// else escaping a command counts as a semantic failure.
struct InputError {
  std::string kind;
  std::string message;
};

void diagnose(const std::string& command, const std::string& kind, const std::string& message) {
  Json d{{"format", io::format_version}, {"command", command}, {"error", kind}, {"message", message}};
  std::cerr << d.dump() << "\n";
}

template <class F>
auto loading(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError{std::string(to_string(e.kind())), e.what()};
  } catch (const nlohmann::json::exception& e) {
    throw InputError{"parse-error", e.what()};
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError{"io-error", "cannot write " + path};
  out << text;
}

struct Inputs {
  std::string complex_path;
  std::string matching_path;
  std::string group_path;
};

ChainComplex load_complex(const std::string& path) {
  return loading([&] { return io::complex_from_json(io::read_file(path)); });
}

GroupAction load_group(const ChainComplex& c, const std::string& path) {
  if (path.empty()) return GroupAction::trivial(c);
  return loading([&] { return close_generators(c, io::generators_from_json(io::read_file(path))); });
}

Matching load_matching(const ChainComplex& c, const std::string& path) {
  return loading([&] { return io::matching_from_json(io::read_file(path), c); });
}

void maybe_dot(const std::string& dot, const ChainComplex& c, const Matching* m) {
  if (dot.empty()) return;
  write_text(dot, to_dot(build_cover_graph(c), m));
}

Json validation_json(const ChainComplex& c, const GroupAction& g) {
  Json complex_violations = Json::array();
  for (const auto& v : check_complex(c)) {
    Json terms = Json::object();
    for (const auto& [label, coeff] : v.boundary_of_boundary.terms()) terms[label] = coeff.to_string();
    complex_violations.push_back(
        Json{{"degree", v.cell.degree}, {"label", v.cell.label}, {"boundary_of_boundary", terms}});
  }
  Json g_violations = Json::array();
  for (const auto& v : verify_g_map(c, g)) {
    g_violations.push_back(Json{{"generator", v.generator}, {"degree", v.cell.degree}, {"label", v.cell.label}});
  }
  const bool ok = complex_violations.empty() && g_violations.empty();
  return Json{{"format", io::format_version},
              {"ok", ok},
              {"group_order", g.order()},
              {"complex_violations", std::move(complex_violations)},
              {"g_map_violations", std::move(g_violations)}};
}

int cmd_validate(const Inputs& in, const std::string& dot) {
  ChainComplex c = load_complex(in.complex_path);
  GroupAction g = load_group(c, in.group_path);
  maybe_dot(dot, c, nullptr);
  Json report = validation_json(c, g);
  std::cout << io::dump(report);
  return report["ok"].get<bool>() ? exit_ok : exit_failure;
}

int cmd_match(const Inputs& in, const std::string& policy, const std::string& dot) {
  ChainComplex c = load_complex(in.complex_path);
  GroupAction g = load_group(c, in.group_path);
  MatchPolicy p = loading([&] { return parse_policy(policy); });
  Matching m = greedy_equivariant_match(c, g, p);
  maybe_dot(dot, c, &m);
  std::cout << io::dump(io::to_json(m, c));
  return exit_ok;
}

int cmd_check_matching(const Inputs& in, const std::string& dot) {
  ChainComplex c = load_complex(in.complex_path);
  GroupAction g = load_group(c, in.group_path);
  Matching m = load_matching(c, in.matching_path);
  maybe_dot(dot, c, &m);
  ValidationReport report = validate(c, g, m);
  std::cout << io::dump(io::to_json(report));
  return report.all_ok() ? exit_ok : exit_failure;
}

int cmd_reduce(const Inputs& in, const std::string& out_dir, const std::string& dot) {
  ChainComplex c = load_complex(in.complex_path);
  GroupAction g = load_group(c, in.group_path);
  Matching m = load_matching(c, in.matching_path);
  if (!out_dir.empty() && fs::exists(out_dir) && !fs::is_empty(out_dir)) {
    throw InputError{"io-error", "output directory " + out_dir + " exists and is not empty"};
  }
  maybe_dot(dot, c, &m);
  ReductionResult result = reduce(c, g, m);
  Json all = io::to_json(result);
  if (out_dir.empty()) {
    std::cout << io::dump(all);
    return exit_ok;
  }
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_text((dir / "input.json").string(), io::dump(all["input"]));
  write_text((dir / "morse.json").string(), io::dump(all["morse_complex"]));
  write_text((dir / "pieces.json").string(), io::dump(all["pieces"]));
  write_text((dir / "iso.json").string(), io::dump(all["iso"]));
  write_text((dir / "steps.json").string(), io::dump(all["steps"]));
  Json summary{{"format", io::format_version},
               {"steps", result.steps.size()},
               {"pieces", result.pieces.size()},
               {"morse_ranks", Json::object()}};
  for (int d = result.morse_complex.min_degree(); d <= result.morse_complex.max_degree(); ++d) {
    summary["morse_ranks"][std::to_string(d)] = result.morse_complex.rank(d);
  }
  std::cout << io::dump(summary);
  return exit_ok;
}

int cmd_homology(const Inputs& in, const std::string& coeff) {
  ChainComplex c = load_complex(in.complex_path);
  if (!coeff.empty()) {
    RingSpec ring = loading([&] { return RingSpec::parse(coeff); });
    c = loading([&] { return change_ring(c, ring); });
  }
  HomologyProfile p = loading([&] { return homology(c); });
  std::cout << io::dump(io::to_json(p));
  return exit_ok;
}

int cmd_verify(const Inputs& in, const std::string& dot) {
  ChainComplex c = load_complex(in.complex_path);
  GroupAction g = load_group(c, in.group_path);
  Matching m = load_matching(c, in.matching_path);
  maybe_dot(dot, c, &m);

  Json report{{"format", io::format_version}};
  ValidationReport v = validate(c, g, m);
  report["matching"] = io::to_json(v);
  if (!v.all_ok()) {
    report["ok"] = false;
    std::cout << io::dump(report);
    return exit_failure;
  }
  ReductionResult result = reduce(c, g, m);
  DecompositionReport d = verify_decomposition(result, g);
  HomologyComparison cmp = compare(result.input, result.morse_complex);
  Json ranks{{"input", Json::object()}, {"morse", Json::object()}};
  for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
    ranks["input"][std::to_string(n)] = c.rank(n);
    ranks["morse"][std::to_string(n)] = result.morse_complex.rank(n);
  }
  report["ranks"] = std::move(ranks);
  report["homology"] = Json{{"input", io::to_json(homology(result.input))},
                            {"morse", io::to_json(homology(result.morse_complex))},
                            {"equal", cmp.equal},
                            {"difference", cmp.detail}};
  report["decomposition"] = Json{{"chain_map", d.chain_map},
                                 {"invertible", d.invertible},
                                 {"equivariant", d.equivariant},
                                 {"problems", d.problems}};
  const bool ok = cmp.equal && d.ok();
  report["ok"] = ok;
  std::cout << io::dump(report);
  return ok ? exit_ok : exit_failure;
}

int cmd_ingest(const std::string& path, const std::string& group_out, const std::string& ring) {
  SimplicialComplex s = loading([&] {
    SimplicialInput input = io::simplicial_from_json(io::read_file(path));
    if (!ring.empty()) input.ring = RingSpec::parse(ring);
    return ingest_simplicial(input);
  });
  if (!group_out.empty()) write_text(group_out, io::dump(io::to_json(s.generators)));
  std::cout << io::dump(io::to_json(s.complex));
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant algebraic Morse reduction of free chain complexes"};
  app.require_subcommand(1);
  std::string dot;
  app.add_option("--dot", dot, "Write the cover graph in DOT format to this file");

  Inputs in;
  std::string policy = "lex";
  std::string out_dir;
  std::string coeff;
  std::string group_out;
  std::string ring;

  auto* validate_cmd = app.add_subcommand("validate", "Check the chain axiom and the group action");
  validate_cmd->add_option("complex", in.complex_path)->required();
  validate_cmd->add_option("--group", in.group_path);

  auto* match_cmd = app.add_subcommand("match", "Greedy equivariant acyclic matching");
  match_cmd->add_option("complex", in.complex_path)->required();
  match_cmd->add_option("--group", in.group_path);
  match_cmd->add_option("--policy", policy)->check(CLI::IsMember({"lex", "max-orbit"}));

  auto* check_cmd = app.add_subcommand("check-matching", "Validate a matching");
  check_cmd->add_option("complex", in.complex_path)->required();
  check_cmd->add_option("matching", in.matching_path)->required();
  check_cmd->add_option("--group", in.group_path);

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce to the Morse complex");
  reduce_cmd->add_option("complex", in.complex_path)->required();
  reduce_cmd->add_option("matching", in.matching_path)->required();
  reduce_cmd->add_option("--group", in.group_path);
  reduce_cmd->add_option("--out", out_dir, "Fresh directory for morse/pieces/iso/steps JSON");

  auto* homology_cmd = app.add_subcommand("homology", "Betti numbers and torsion");
  homology_cmd->add_option("complex", in.complex_path)->required();
  homology_cmd->add_option("--coeff", coeff, "int, rat or mod:p");

  auto* verify_cmd = app.add_subcommand("verify", "Reduce and re-check everything");
  verify_cmd->add_option("complex", in.complex_path)->required();
  verify_cmd->add_option("matching", in.matching_path)->required();
  verify_cmd->add_option("--group", in.group_path);

  auto* ingest_cmd = app.add_subcommand("ingest", "Simplicial complex to chain complex");
  std::string simplicial_path;
  ingest_cmd->add_option("simplicial", simplicial_path)->required();
  ingest_cmd->add_option("--group-out", group_out, "Write the induced action here");
  ingest_cmd->add_option("--ring", ring, "Override the ring given in the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "validate") return cmd_validate(in, dot);
    if (command == "match") return cmd_match(in, policy, dot);
    if (command == "check-matching") return cmd_check_matching(in, dot);
    if (command == "reduce") return cmd_reduce(in, out_dir, dot);
    if (command == "homology") return cmd_homology(in, coeff);
    if (command == "verify") return cmd_verify(in, dot);
    if (command == "ingest") return cmd_ingest(simplicial_path, group_out, ring);
  } catch (const InputError& e) {
    diagnose(command, e.kind, e.message);
    return exit_input;
  } catch (const Error& e) {
    diagnose(command, std::string(to_string(e.kind())), e.what());
    return exit_failure;
  } catch (const std::exception& e) {
    diagnose(command, "internal", e.what());
    return exit_failure;
  }
  return exit_input;
}
