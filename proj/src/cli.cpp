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

#include "stabctx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabctx/classify.hpp"
#include "stabctx/mis.hpp"
#include "stabctx/stab2.hpp"
#include "stabctx/verification.hpp"
#include "stabctx/witness_graph.hpp"

namespace stabctx {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t p = 3;
  std::string facet = "all";
  std::string backend = "symbolic";
  std::string output;
  std::string format;
  double tolerance = kFacetTol;
  std::uint64_t seed = 20260101;
  unsigned threads = 1;
  double timeout = 0.0;  // seconds; 0 disables
  std::string state = "mixed";
  std::size_t grid = 101;
  double extent = 1.0;
  std::size_t trials = 1000;
  std::string inject_facet;
  std::vector<int> criteria;
  std::string input;
  std::string partition;
};

std::vector<std::size_t> selected_facets(const RunConfig& cfg) {
  const auto& facets = PhaseSpace::get(cfg.p).facets();
  std::vector<std::size_t> out;
  if (cfg.facet == "all") {
    for (std::size_t i = 0; i < facets.size(); ++i) out.push_back(i);
    return out;
  }
  std::size_t idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoul(cfg.facet, &used);
    if (used != cfg.facet.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("--facet must be an index or \"all\", got \"" + cfg.facet + "\"");
  }
  if (idx >= facets.size())
    throw UsageError("facet index " + std::to_string(idx) + " out of range (family size " +
                     std::to_string(facets.size()) + ")");
  out.push_back(idx);
  return out;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_file(cfg.output, content);
  }
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

int cmd_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = cfg.format.empty() ? "dimacs" : cfg.format;
  if (format != "dimacs" && format != "json") throw UsageError("graph --format must be dimacs or json");
  const Backend backend = parse_backend(cfg.backend);
  const auto ids = selected_facets(cfg);
  const auto& facets = PhaseSpace::get(cfg.p).facets();

  std::vector<std::pair<std::size_t, ExclusivityGraph>> graphs;
  try {
    for (std::size_t idx : ids) graphs.emplace_back(idx, build_graph(facets[idx], backend));
  } catch (const BackendMismatch& e) {
    err << "backend mismatch: " << e.what() << "\n";
    return kExitUsage;
  }

  auto render = [&](const ExclusivityGraph& g) { return format == "dimacs" ? export_dimacs(g) : export_json(g); };
  auto partition_json = [](const ExclusivityGraph& g) { return json{{"partition", g.partition()}}.dump() + "\n"; };

  const bool to_dir = !cfg.output.empty() && (ids.size() > 1 || fs::is_directory(cfg.output) ||
                                              cfg.output.back() == '/');
  if (cfg.output.empty()) {
    for (const auto& [idx, g] : graphs) out << render(g);
  } else if (!to_dir) {
    write_file(cfg.output, render(graphs.front().second));
    if (format == "dimacs") write_file(cfg.output + ".partition.json", partition_json(graphs.front().second));
  } else {
    fs::create_directories(cfg.output);
    for (const auto& [idx, g] : graphs) {
      const std::string stem = "graph_p" + std::to_string(cfg.p) + "_r" + std::to_string(idx);
      const fs::path base = fs::path(cfg.output) / stem;
      write_file(base.string() + (format == "dimacs" ? ".dimacs" : ".json"), render(g));
      if (format == "dimacs") write_file(base.string() + ".partition.json", partition_json(g));
    }
  }
  for (const auto& [idx, g] : graphs) {
    err << "facet " << idx << " " << to_string(facets[idx]) << ": " << g.vertex_count() << " vertices, "
        << g.edge_count() << " edges, backend " << to_string(cfg.p == 2 ? Backend::Numeric : backend) << "\n";
  }
  return kExitOk;
}

MisOptions mis_options(const RunConfig& cfg) {
  MisOptions o;
  if (cfg.timeout > 0.0)
    o.timeout = std::chrono::milliseconds(static_cast<long long>(cfg.timeout * 1000.0));
  return o;
}

int cmd_alpha(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto ids = selected_facets(cfg);
  const auto& facets = PhaseSpace::get(cfg.p).facets();
  const Backend backend = parse_backend(cfg.backend);
  json results = json::array();
  bool timed_out = false;
  for (std::size_t idx : ids) {
    const ExclusivityGraph g = build_graph(facets[idx], backend);
    const IndependentSet s = max_independent_set(g, mis_options(cfg));
    json entry = {{"facet", idx},
                  {"r", facets[idx].r},
                  {"vertices", g.vertex_count()},
                  {"edges", g.edge_count()},
                  {"alpha", s.size()},
                  {"exact", s.exact},
                  {"independent_set", s.vertices}};
    if (s.exact) {
      entry["certificate"] = to_json(sandwich_certificate(g, s.size()));
    } else {
      timed_out = true;
      entry["lower_bound"] = s.size();
      err << "facet " << idx << ": timeout, best lower bound " << s.size() << "\n";
    }
    results.push_back(entry);
  }
  emit(cfg, out, json{{"p", cfg.p}, {"results", results}}.dump(2) + "\n");
  return timed_out ? kExitTimeout : kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.trials = cfg.trials;
  opt.threads = cfg.threads;
  opt.only = cfg.criteria;
  for (int id : opt.only)
    if (id < 1 || id > kCriterionCount) throw UsageError("unknown criterion " + std::to_string(id));
  if (!cfg.inject_facet.empty()) opt.inject_facet = parse_facet_vector(cfg.inject_facet);
  const auto results = run_acceptance(opt);

  if (cfg.format == "json") {
    emit(cfg, out, to_json(results).dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& r : results) text += format_line(r, false) + "\n";
    emit(cfg, out, text);
  }
  for (const auto& r : results) {
    if (!r.passed) {
      err << "first failing criterion: " << r.id << " (" << r.title << ")\n";
      return kExitVerificationFailed;
    }
  }
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const DensityMatrix rho = parse_state(cfg.state, cfg.p);
  const StateClass c = classify_state(rho, cfg.tolerance);
  json j = to_json(c);
  j["p"] = cfg.p;
  emit(cfg, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_slice(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.grid < 2) throw UsageError("--grid must be at least 2");
  if (!(cfg.extent > 0.0)) throw UsageError("--extent must be positive");
  SliceSpec spec = default_slice(cfg.p, cfg.grid);
  spec.s_min = spec.t_min = -cfg.extent;
  spec.s_max = spec.t_max = cfg.extent;
  const auto points = slice_scan(spec, cfg.tolerance, cfg.threads);
  emit(cfg, out, slice_csv(points));
  std::map<std::string, std::size_t> counts;
  for (const auto& pt : points) ++counts[to_string(pt.region)];
  for (const auto& [name, n] : counts) err << name << ": " << n << "\n";
  return kExitOk;
}

int cmd_dump_ops(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto& ps = PhaseSpace::get(cfg.p);
  json mubs = json::array();
  for (std::uint32_t b = 1; b <= cfg.p + 1; ++b)
    for (std::uint32_t k = 0; k < cfg.p; ++k)
      mubs.push_back({{"basis", b}, {"level", k}, {"matrix", matrix_json(ps.mub_projector({b, k}))}});
  json facets = json::array();
  for (std::size_t idx : selected_facets(cfg)) {
    facets.push_back({{"index", idx}, {"r", ps.facets()[idx].r}, {"matrix", matrix_json(ps.facet_operators()[idx])}});
  }
  emit(cfg, out, json{{"p", cfg.p}, {"mub_projectors", mubs}, {"facet_operators", facets}}.dump() + "\n");
  return kExitOk;
}

int cmd_dump_projectors(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto ids = selected_facets(cfg);
  if (ids.size() != 1) throw UsageError("dump-projectors needs a single --facet index");
  emit(cfg, out, projectors_jsonl(witness_set(PhaseSpace::get(cfg.p).facets()[ids.front()]), cfg.p));
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty()) throw UsageError("solve needs --input");
  const std::string text = read_file(cfg.input);
  const bool is_json = cfg.format == "json" || (cfg.format.empty() && fs::path(cfg.input).extension() == ".json");
  std::optional<ExclusivityGraph> g;
  if (is_json) {
    g = import_json(text);
  } else {
    std::optional<Partition> part;
    if (!cfg.partition.empty()) part = parse_partition_json(read_file(cfg.partition));
    g = import_dimacs(text, part);
  }
  const IndependentSet s = max_independent_set(*g, mis_options(cfg));
  json j = {{"vertices", g->vertex_count()},
            {"edges", g->edge_count()},
            {"classes", g->partition().size()},
            {"alpha", s.size()},
            {"exact", s.exact},
            {"independent_set", s.vertices},
            {"clique_cover_upper", g->partition().size()}};
  emit(cfg, out, j.dump(2) + "\n");
  if (!s.exact) {
    err << "timeout, best lower bound " << s.size() << "\n";
    return kExitTimeout;
  }
  return kExitOk;
}

// Reads key=value lines; '#' starts a comment, blank lines and [sections] are skipped.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::istringstream in(read_file(path));
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    kv[trim(line.substr(0, eq))] = value;
  }
  return kv;
}

// Appends config entries as flags unless the command line already sets them.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin() + 1, args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : read_config(path)) {
    if (key == "config" || given(key)) continue;
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

DensityMatrix parse_state(const std::string& spec, std::uint32_t p) {
  if (spec == "mixed") return maximally_mixed(p);
  if (spec == "strange") {
    if (p == 2) throw std::invalid_argument("the strange state needs odd p; use tstate for p = 2");
    return strange_state(p);
  }
  if (spec == "tstate") {
    if (p != 2) throw std::invalid_argument("tstate is a qubit state; use --p 2");
    return t_state();
  }
  std::string text = spec;
  if (!spec.empty() && spec.front() != '[') {
    try {
      text = read_file(spec);
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown state \"" + spec + "\": expected strange, tstate, mixed, a JSON matrix or a file");
    }
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("state is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("state must be a JSON array");
  std::vector<json> entries;
  const std::size_t n = p;
  if (j.size() == n && !j.empty() && j[0].is_array() && j[0].size() == n && j[0][0].is_array()) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != n) throw std::invalid_argument("state rows must have p entries");
      for (const auto& e : row) entries.push_back(e);
    }
  } else {
    for (const auto& e : j) entries.push_back(e);
  }
  if (entries.size() != n * n)
    throw std::invalid_argument("state must have " + std::to_string(n * n) + " entries, got " +
                                std::to_string(entries.size()));
  CMatrix rho(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument("state entries must be [re, im] number pairs");
    rho(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  validate_unit_trace_hermitian(rho, n);
  return rho;
}

FacetVector parse_facet_vector(const std::string& text) {
  std::vector<std::uint32_t> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument("bad");
      entries.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("facet vector entries must be non-negative integers: \"" + text + "\"");
    }
  }
  if (entries.size() < 3) throw std::invalid_argument("facet vector needs p + 1 entries");
  const auto p = static_cast<std::uint32_t>(entries.size() - 1);
  if (!is_prime(p)) throw std::invalid_argument("facet vector length must be p + 1 for prime p");
  for (auto v : entries)
    if (v >= p) throw std::invalid_argument("facet vector entries must be below p");
  FacetVector r;
  r.p = p;
  r.r = entries;
  r.kind = FacetKind::Generic;
  return r;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stabilizer contextuality witnesses: exclusivity graphs, independence numbers, state classification"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  auto common = [&](CLI::App* sub, bool facet) {
    sub->add_option("--p", cfg.p, "prime dimension")->capture_default_str();
    if (facet) sub->add_option("--facet", cfg.facet, "facet index or all")->capture_default_str();
    sub->add_option("--output", cfg.output, "output path (stdout when omitted)");
    sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--config", config_path, "key=value config file; flags take precedence");
  };

  auto* graph = app.add_subcommand("graph", "build and export exclusivity graphs");
  common(graph, true);
  graph->add_option("--backend", cfg.backend, "symbolic, numeric or both")->capture_default_str();
  graph->add_option("--format", cfg.format, "dimacs or json");

  auto* alpha = app.add_subcommand("alpha", "independence numbers with sandwich certificates");
  common(alpha, true);
  alpha->add_option("--backend", cfg.backend, "symbolic, numeric or both")->capture_default_str();
  alpha->add_option("--timeout", cfg.timeout, "seconds per facet (0 = none)")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  common(verify, false);
  verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "random states per randomized check")->capture_default_str();
  verify->add_option("--format", cfg.format, "text or json");
  verify->add_option("--criteria", cfg.criteria, "criterion ids to run (default all)")->delimiter(',');
  verify->add_option("--inject-facet", cfg.inject_facet,
                     "comma-separated facet vector substituted into the bijection witness");

  auto* classify = app.add_subcommand("classify", "classify a single-qudit state");
  common(classify, false);
  classify->add_option("--state", cfg.state, "strange, tstate, mixed, JSON matrix or file")->capture_default_str();
  classify->add_option("--tolerance", cfg.tolerance, "facet tolerance")->capture_default_str();

  auto* slice = app.add_subcommand("slice", "classify a 2D slice of qutrit state space (CSV)");
  common(slice, false);
  slice->add_option("--grid", cfg.grid, "points per axis")->capture_default_str();
  slice->add_option("--extent", cfg.extent, "half-width of the square (s, t) window")->capture_default_str();
  slice->add_option("--tolerance", cfg.tolerance, "facet tolerance")->capture_default_str();
  slice->add_option("--format", cfg.format, "csv");

  auto* dump_ops = app.add_subcommand("dump-ops", "MUB projectors and facet operators as JSON");
  common(dump_ops, true);
  auto* dump_proj = app.add_subcommand("dump-projectors", "witness projectors of one facet as JSON lines");
  common(dump_proj, true);

  auto* solve = app.add_subcommand("solve", "maximum independent set of an external graph");
  common(solve, false);
  solve->add_option("--input", cfg.input, "DIMACS or JSON graph");
  solve->add_option("--partition", cfg.partition, "JSON clique partition sidecar for DIMACS input");
  solve->add_option("--format", cfg.format, "dimacs or json (default from the extension)");
  solve->add_option("--timeout", cfg.timeout, "seconds (0 = none)")->capture_default_str();

  std::vector<std::string> args;
  try {
    args = apply_config(raw_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!is_prime(cfg.p)) throw UsageError("p must be prime, got " + std::to_string(cfg.p));
    if (cfg.tolerance < 0.0) throw UsageError("--tolerance must be non-negative");
    if (cfg.timeout < 0.0) throw UsageError("--timeout must be non-negative");
    if (graph->parsed()) return cmd_graph(cfg, out, err);
    if (alpha->parsed()) return cmd_alpha(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (classify->parsed()) return cmd_classify(cfg, out, err);
    if (slice->parsed()) return cmd_slice(cfg, out, err);
    if (dump_ops->parsed()) return cmd_dump_ops(cfg, out, err);
    if (dump_proj->parsed()) return cmd_dump_projectors(cfg, out, err);
    if (solve->parsed()) return cmd_solve(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace stabctx
