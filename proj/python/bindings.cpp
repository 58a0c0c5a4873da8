// JSON in, JSON out: the python side works with the same documents as the
// command line tool.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqmorse/error.hpp"
#include "eqmorse/homology.hpp"
#include "eqmorse/io.hpp"
#include "eqmorse/matching.hpp"
#include "eqmorse/reduce.hpp"
#include "eqmorse/simplicial.hpp"

namespace py = pybind11;
using namespace eqmorse;

namespace {

ChainComplex load_complex(const std::string& text) {
  return io::complex_from_json(io::parse(text, "complex"));
}

GroupAction load_group(const ChainComplex& c, const std::optional<std::string>& text) {
  if (!text) return GroupAction::trivial(c);
  return close_generators(c, io::generators_from_json(io::parse(*text, "generators")));
}

Matching load_matching(const ChainComplex& c, const std::string& text) {
  return io::matching_from_json(io::parse(text, "matching"), c);
}

std::string dump(const io::Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    } catch (const nlohmann::json::exception& e) {
      py::tuple args = py::make_tuple(std::string("parse-error"), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("homology", [](const std::string& complex) { return dump(io::to_json(homology(load_complex(complex)))); },
        py::arg("complex"));

  m.def(
      "check_complex",
      [](const std::string& complex) {
        std::vector<std::pair<int, std::string>> bad;
        for (const auto& v : check_complex(load_complex(complex))) bad.emplace_back(v.cell.degree, v.cell.label);
        return bad;
      },
      py::arg("complex"));

  m.def(
      "group_order",
      [](const std::string& complex, const std::optional<std::string>& generators) {
        ChainComplex c = load_complex(complex);
        return load_group(c, generators).order();
      },
      py::arg("complex"), py::arg("generators") = py::none());

  m.def(
      "match",
      [](const std::string& complex, const std::optional<std::string>& generators, const std::string& policy) {
        ChainComplex c = load_complex(complex);
        GroupAction g = load_group(c, generators);
        return dump(io::to_json(greedy_equivariant_match(c, g, parse_policy(policy)), c));
      },
      py::arg("complex"), py::arg("generators") = py::none(), py::arg("policy") = "lex");

  m.def(
      "check_matching",
      [](const std::string& complex, const std::string& matching, const std::optional<std::string>& generators) {
        ChainComplex c = load_complex(complex);
        GroupAction g = load_group(c, generators);
        return dump(io::to_json(validate(c, g, load_matching(c, matching))));
      },
      py::arg("complex"), py::arg("matching"), py::arg("generators") = py::none());

  m.def(
      "reduce",
      [](const std::string& complex, const std::string& matching, const std::optional<std::string>& generators) {
        ChainComplex c = load_complex(complex);
        GroupAction g = load_group(c, generators);
        Matching mm = load_matching(c, matching);
        std::string out;
        {
          py::gil_scoped_release release;
          out = dump(io::to_json(reduce(c, g, mm)));
        }
        return out;
      },
      py::arg("complex"), py::arg("matching"), py::arg("generators") = py::none());

  m.def(
      "ingest",
      [](const std::string& simplicial, const std::optional<std::string>& ring) {
        SimplicialInput input = io::simplicial_from_json(io::parse(simplicial, "simplicial"));
        if (ring) input.ring = RingSpec::parse(*ring);
        SimplicialComplex s = ingest_simplicial(input);
        return py::make_tuple(dump(io::to_json(s.complex)), dump(io::to_json(s.generators)));
      },
      py::arg("simplicial"), py::arg("ring") = py::none());
}
