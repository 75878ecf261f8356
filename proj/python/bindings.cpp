// Copyright 2026 The stabctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabctx/classify.hpp"
#include "stabctx/cli.hpp"
#include "stabctx/mis.hpp"
#include "stabctx/verification.hpp"
#include "stabctx/witness_graph.hpp"

namespace py = pybind11;
using namespace stabctx;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

const FacetVector& facet_at(std::uint32_t p, std::size_t index) {
  const auto& facets = PhaseSpace::get(p).facets();
  if (index >= facets.size()) throw py::index_error("facet index out of range");
  return facets[index];
}

}  // namespace

PYBIND11_MODULE(_stabctx, m) {
  m.doc() = "Stabilizer contextuality witnesses for prime-dimensional qudits";

  m.def("facets", [](std::uint32_t p) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& r : PhaseSpace::get(p).facets()) out.push_back(r.r);
    return out;
  }, py::arg("p"), "Simulable facet vectors r, in index order.");

  m.def("a_operator", [](std::uint32_t p, std::size_t facet) { return a_operator(facet_at(p, facet)); },
        py::arg("p"), py::arg("facet"));

  m.def("maximally_mixed", &maximally_mixed, py::arg("p"));
  m.def("strange_state", &strange_state, py::arg("p"));
  m.def("t_state", &t_state);

  m.def("graph", [](std::uint32_t p, std::size_t facet, const std::string& backend) {
    const ExclusivityGraph g = build_graph(facet_at(p, facet), parse_backend(backend));
    py::dict d;
    d["vertices"] = g.vertex_count();
    d["edges"] = g.edges();
    d["partition"] = g.partition();
    return d;
  }, py::arg("p"), py::arg("facet") = 0, py::arg("backend") = "symbolic");

  m.def("export_dimacs", [](std::uint32_t p, std::size_t facet) {
    return export_dimacs(build_graph(facet_at(p, facet)));
  }, py::arg("p"), py::arg("facet") = 0);

  m.def("alpha", [](std::uint32_t p, std::size_t facet) {
    const ExclusivityGraph g = build_graph(facet_at(p, facet));
    IndependentSet s;
    {
      py::gil_scoped_release release;
      s = max_independent_set(g);
    }
    py::dict d;
    d["alpha"] = s.size();
    d["exact"] = s.exact;
    d["independent_set"] = s.vertices;
    d["certificate"] = to_py(to_json(sandwich_certificate(g, s.size())));
    return d;
  }, py::arg("p"), py::arg("facet") = 0);

  m.def("witness_value", [](std::uint32_t p, std::size_t facet, const CMatrix& rho, const CMatrix& sigma) {
    return witness_value(facet_at(p, facet), rho, sigma);
  }, py::arg("p"), py::arg("facet"), py::arg("rho"), py::arg("sigma"));

  m.def("classify", [](const CMatrix& rho, double tol) { return to_py(to_json(classify_state(rho, tol))); },
        py::arg("rho"), py::arg("tolerance") = kFacetTol);

  m.def("verify", [](std::vector<int> criteria, std::uint64_t seed, std::size_t trials) {
    AcceptanceOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.only = std::move(criteria);
    std::vector<CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = run_acceptance(opt);
    }
    return to_py(to_json(results));
  }, py::arg("criteria") = std::vector<int>{}, py::arg("seed") = 20260101, py::arg("trials") = 1000);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "stabctx");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
}
