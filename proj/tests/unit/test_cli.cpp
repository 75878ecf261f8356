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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "stabctx/cli.hpp"
#include "stabctx/witness_graph.hpp"

using namespace stabctx;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "stabctx");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("stabctx_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& file) const { return (path / file).string(); }
};

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"graph", "--bogus"}).code == kExitUsage);
  const Run bad_p = run({"graph", "--p", "4"});
  CHECK(bad_p.code == kExitUsage);
  CHECK(bad_p.err.find("p must be prime, got 4") != std::string::npos);
  CHECK(run({"graph", "--p", "3", "--facet", "9"}).code == kExitUsage);
  CHECK(run({"graph", "--backend", "exact"}).code == kExitUsage);
  CHECK(run({"graph", "--help"}).code == kExitOk);
}

TEST_CASE("graph to stdout") {
  const Run r = run({"graph", "--p", "2", "--facet", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(first_line(r.out).rfind("p edge 30 ", 0) == 0);
  const ExclusivityGraph g = import_dimacs(r.out);
  CHECK(g.vertex_count() == 30);
  CHECK(g.same_structure(build_graph(PhaseSpace::get(2).facets().front())));

  const Run j = run({"graph", "--p", "2", "--facet", "0", "--format", "json"});
  REQUIRE(j.code == kExitOk);
  CHECK(import_json(j.out).same_structure(g));
}

TEST_CASE("graph output is byte-identical across runs") {
  CHECK(run({"graph", "--p", "3", "--facet", "4"}).out == run({"graph", "--p", "3", "--facet", "4"}).out);
  CHECK(run({"graph", "--p", "3", "--facet", "4", "--threads", "4"}).out ==
        run({"graph", "--p", "3", "--facet", "4"}).out);
}

TEST_CASE("graph directory output with both backends") {
  TempDir dir("graphs");
  const Run r = run({"graph", "--p", "3", "--facet", "all", "--backend", "both", "--output", dir.path.string() + "/"});
  REQUIRE(r.code == kExitOk);
  std::size_t graphs = 0, partitions = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".partition.json")) ++partitions;
    else if (name.ends_with(".dimacs")) ++graphs;
  }
  CHECK(graphs == 9);
  CHECK(partitions == 9);
  CHECK(fs::exists(dir / "graph_p3_r0.dimacs"));
}

TEST_CASE("solve an exported graph with its partition sidecar") {
  TempDir dir("solve");
  const std::string file = dir / "g.dimacs";
  REQUIRE(run({"graph", "--p", "3", "--facet", "0", "--output", file}).code == kExitOk);
  REQUIRE(fs::exists(file + ".partition.json"));
  const Run r = run({"solve", "--input", file, "--partition", file + ".partition.json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["alpha"] == 27);
  CHECK(j["vertices"] == 240);
  CHECK(j["classes"] == 28);
  CHECK(j["exact"] == true);
  CHECK(j["independent_set"].size() == 27);

  const Run no_sidecar = run({"solve", "--input", file});
  REQUIRE(no_sidecar.code == kExitOk);
  CHECK(nlohmann::json::parse(no_sidecar.out)["alpha"] == 27);

  CHECK(run({"solve", "--input", dir / "missing.dimacs"}).code == kExitUsage);
}

TEST_CASE("alpha") {
  const Run r = run({"alpha", "--p", "2", "--facet", "0"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["p"] == 2);
  REQUIRE(j["results"].size() == 1);
  const auto& res = j["results"][0];
  CHECK(res["alpha"] == 8);
  CHECK(res["vertices"] == 30);
  CHECK(res["exact"] == true);
  CHECK(res["certificate"]["clique_cover_upper"] == 9);
  CHECK(res["certificate"]["certified"] == false);

  const auto j3 = nlohmann::json::parse(run({"alpha", "--p", "3", "--facet", "0"}).out);
  CHECK(j3["results"][0]["alpha"] == 27);
  CHECK(j3["results"][0]["certificate"]["certified"] == true);
}

TEST_CASE("classify") {
  const Run s = run({"classify", "--p", "3", "--state", "strange"});
  REQUIRE(s.code == kExitOk);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["class"] == "Contextual");
  CHECK(std::abs(j["min_facet_value"].get<double>() + 1.0) < 1e-9);
  CHECK(nlohmann::json::parse(run({"classify", "--p", "3", "--state", "mixed"}).out)["class"] == "InPstab");
  CHECK(nlohmann::json::parse(run({"classify", "--p", "2", "--state", "tstate"}).out)["class"] == "Contextual");

  const std::string diag = R"([[[0.5,0],[0,0],[0,0]],[[0,0],[0.5,0],[0,0]],[[0,0],[0,0],[0,0]]])";
  CHECK(nlohmann::json::parse(run({"classify", "--p", "3", "--state", diag}).out)["class"] == "InPstab");

  CHECK(run({"classify", "--p", "3", "--state", "[[1,2]]"}).code == kExitUsage);
  CHECK(run({"classify", "--p", "3", "--state", "[not json"}).code == kExitUsage);
  CHECK(run({"classify", "--p", "2", "--state", "strange"}).code == kExitUsage);
  // Trace 2.
  const std::string trace2 = R"([[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]])";
  CHECK(run({"classify", "--p", "3", "--state", trace2}).code == kExitUsage);
}

TEST_CASE("state parsing") {
  CHECK((parse_state("mixed", 3) - maximally_mixed(3)).norm() < 1e-12);
  const std::string flat = R"([[0.5,0],[0,0],[0,0],[0.5,0]])";
  const DensityMatrix rho = parse_state(flat, 2);
  CHECK(std::abs(rho(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(rho(1, 1) - 0.5) < 1e-12);
  CHECK_THROWS_AS(parse_state("[[0.5,0],[0.1,0],[0,0],[0.5,0]]", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("nosuchfile.json", 3), std::invalid_argument);

  const FacetVector r = parse_facet_vector("0,1,2,0");
  CHECK(r.p == 3);
  CHECK(r.r == std::vector<std::uint32_t>{0, 1, 2, 0});
  CHECK_THROWS(parse_facet_vector("0,3,0,0"));
  CHECK_THROWS(parse_facet_vector("0,1,0,0,0"));
}

TEST_CASE("slice") {
  const Run r = run({"slice", "--p", "3", "--grid", "5"});
  REQUIRE(r.code == kExitOk);
  CHECK(first_line(r.out) == "s,t,class,min_facet,min_eig");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 26);
  CHECK(run({"slice", "--p", "2"}).code == kExitUsage);
  CHECK(run({"slice", "--p", "3", "--grid", "1"}).code == kExitUsage);
}

TEST_CASE("config file precedence") {
  TempDir dir("config");
  const std::string cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# qubit run\n[graph]\np = 2\nfacet = 1\n";
  const Run from_config = run({"graph", "--config", cfg});
  REQUIRE(from_config.code == kExitOk);
  CHECK(first_line(from_config.out).rfind("p edge 30 ", 0) == 0);
  const Run flag_wins = run({"graph", "--config", cfg, "--p", "3"});
  REQUIRE(flag_wins.code == kExitOk);
  CHECK(first_line(flag_wins.out).rfind("p edge 240 ", 0) == 0);
  // Default p is 3.
  CHECK(first_line(run({"graph", "--facet", "1"}).out).rfind("p edge 240 ", 0) == 0);
  CHECK(run({"graph", "--config", dir / "missing.cfg"}).code == kExitUsage);
}

TEST_CASE("verify") {
  const Run ok = run({"verify", "--criteria", "1,5", "--trials", "50"});
  CHECK(ok.code == kExitOk);
  CHECK(std::count(ok.out.begin(), ok.out.end(), '\n') == 2);
  CHECK(ok.out.rfind("PASS  [1]", 0) == 0);

  const Run injected = run({"verify", "--criteria", "5", "--trials", "50", "--inject-facet", "0,1,1,0"});
  CHECK(injected.code == kExitVerificationFailed);
  CHECK(injected.out.rfind("FAIL  [5]", 0) == 0);
  CHECK(injected.err.find("first failing criterion") != std::string::npos);

  // Verdicts do not depend on the seed.
  const auto verdicts = [](const std::string& seed) {
    const Run r = run({"verify", "--criteria", "5,9", "--trials", "40", "--seed", seed, "--format", "json"});
    std::vector<bool> out;
    for (const auto& c : nlohmann::json::parse(r.out)["criteria"]) out.push_back(c["passed"].get<bool>());
    return out;
  };
  CHECK(verdicts("1") == verdicts("99"));

  CHECK(run({"verify", "--criteria", "10"}).code == kExitUsage);
}

TEST_CASE("operator dumps") {
  const Run ops = run({"dump-ops", "--p", "3"});
  REQUIRE(ops.code == kExitOk);
  const auto j = nlohmann::json::parse(ops.out);
  CHECK(j["p"] == 3);
  CHECK(j["mub_projectors"].size() == 12);
  CHECK(j["facet_operators"].size() == 9);
  CHECK(j["facet_operators"][0]["matrix"].size() == 3);

  const Run proj = run({"dump-projectors", "--p", "3", "--facet", "0"});
  REQUIRE(proj.code == kExitOk);
  CHECK(std::count(proj.out.begin(), proj.out.end(), '\n') == 240);
  CHECK(run({"dump-projectors", "--p", "3", "--facet", "all"}).code == kExitUsage);
}
