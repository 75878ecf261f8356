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

#include "stabctx/witness_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace stabctx {

Backend parse_backend(const std::string& name) {
  if (name == "symbolic") return Backend::Symbolic;
  if (name == "numeric") return Backend::Numeric;
  if (name == "both") return Backend::Both;
  throw std::invalid_argument("unknown backend '" + name + "'");
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::Symbolic: return "symbolic";
    case Backend::Numeric: return "numeric";
    case Backend::Both: return "both";
  }
  return "?";
}

ExclusivityGraph::ExclusivityGraph(std::size_t vertex_count, const std::vector<Edge>& edges,
                                   Partition partition, std::uint32_t p,
                                   std::optional<FacetVector> facet,
                                   std::vector<StabProjector> projectors)
    : adjacency_(vertex_count, Bitset(vertex_count)),
      partition_(std::move(partition)),
      class_of_(vertex_count, vertex_count),
      p_(p),
      facet_(std::move(facet)),
      projectors_(std::move(projectors)) {
  if (!projectors_.empty() && projectors_.size() != vertex_count) {
    throw std::invalid_argument("projector list does not match the vertex count");
  }
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (!adjacency_[u].test(v)) ++edge_count_;
    adjacency_[u].set(v);
    adjacency_[v].set(u);
  }
  for (std::size_t c = 0; c < partition_.size(); ++c) {
    for (std::size_t v : partition_[c]) {
      if (v >= vertex_count) throw std::invalid_argument("partition vertex out of range");
      if (class_of_[v] != vertex_count) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two classes");
      }
      class_of_[v] = c;
    }
    for (std::size_t i = 0; i < partition_[c].size(); ++i)
      for (std::size_t j = i + 1; j < partition_[c].size(); ++j) {
        if (!adjacent(partition_[c][i], partition_[c][j])) {
          throw std::invalid_argument("partition class " + std::to_string(c) + " is not a clique");
        }
      }
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (class_of_[v] == vertex_count) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the partition");
    }
  }
}

std::vector<Edge> ExclusivityGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < vertex_count(); ++u) {
    adjacency_[u].for_each([&](std::size_t v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  return out;
}

std::vector<std::size_t> ExclusivityGraph::degree_sequence() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertex_count(); ++v) out.push_back(degree(v));
  std::sort(out.begin(), out.end());
  return out;
}

ExclusivityGraph ExclusivityGraph::induced_subgraph(std::span<const std::size_t> vertices) const {
  std::vector<std::size_t> new_id(vertex_count(), vertex_count());
  for (std::size_t i = 0; i < vertices.size(); ++i) new_id[vertices[i]] = i;
  std::vector<Edge> sub_edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) sub_edges.emplace_back(i, j);
  Partition sub_partition;
  for (const auto& cls : partition_) {
    std::vector<std::size_t> kept;
    for (std::size_t v : cls)
      if (new_id[v] != vertex_count()) kept.push_back(new_id[v]);
    std::sort(kept.begin(), kept.end());
    if (!kept.empty()) sub_partition.push_back(std::move(kept));
  }
  std::vector<StabProjector> sub_projectors;
  if (!projectors_.empty()) {
    for (std::size_t v : vertices) sub_projectors.push_back(projectors_[v]);
  }
  return ExclusivityGraph(vertices.size(), sub_edges, std::move(sub_partition), p_, facet_,
                          std::move(sub_projectors));
}

bool ExclusivityGraph::same_structure(const ExclusivityGraph& other) const {
  return vertex_count() == other.vertex_count() && adjacency_ == other.adjacency_ &&
         partition_ == other.partition_;
}

namespace {

Partition basis_partition(const std::vector<StabProjector>& projs, std::uint32_t p) {
  Partition out(basis_count(p));
  for (std::size_t v = 0; v < projs.size(); ++v) out[basis_index(basis_of(projs[v]), p)].push_back(v);
  return out;
}

std::vector<Edge> numeric_edges(const std::vector<StabProjector>& projs, std::uint32_t p) {
  const std::size_t n = projs.size();
  const std::size_t dim = std::size_t{p} * p;
  CMatrix states(dim, n);
  for (std::size_t v = 0; v < n; ++v) states.col(v) = state_vector(projs[v], p);
  const CMatrix gram = states.adjoint() * states;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (std::norm(gram(u, v)) < 1e-7) edges.emplace_back(u, v);
  return edges;
}

std::vector<Edge> symbolic_edges(const std::vector<StabProjector>& projs, std::uint32_t p) {
  const auto& map = MubCosetMap::get(p);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < projs.size(); ++u)
    for (std::size_t v = u + 1; v < projs.size(); ++v)
      if (orthogonal_symbolic(projs[u], projs[v], map)) edges.emplace_back(u, v);
  return edges;
}

std::string describe(const StabProjector& proj, std::uint32_t p) {
  return projector_json(proj, p).dump();
}

}  // namespace

ExclusivityGraph build_graph(const FacetVector& r, Backend backend) {
  const std::uint32_t p = r.p;
  auto projs = witness_set(r);
  if (p == 2) backend = Backend::Numeric;

  std::vector<Edge> edges;
  if (backend == Backend::Numeric) {
    edges = numeric_edges(projs, p);
  } else if (backend == Backend::Symbolic) {
    edges = symbolic_edges(projs, p);
  } else {
    edges = symbolic_edges(projs, p);
    const auto numeric = numeric_edges(projs, p);
    if (edges != numeric) {
      std::vector<Edge> diff;
      std::set_symmetric_difference(edges.begin(), edges.end(), numeric.begin(), numeric.end(),
                                    std::back_inserter(diff));
      std::ostringstream msg;
      msg << "symbolic and numeric backends disagree on " << diff.size() << " pairs for facet "
          << to_string(r);
      for (std::size_t i = 0; i < std::min<std::size_t>(diff.size(), 5); ++i) {
        msg << "\n  " << describe(projs[diff[i].first], p) << " vs "
            << describe(projs[diff[i].second], p);
      }
      throw BackendMismatch(msg.str(), std::move(diff));
    }
  }
  Partition partition = basis_partition(projs, p);
  const std::size_t n = projs.size();
  return ExclusivityGraph(n, edges, std::move(partition), p, r, std::move(projs));
}

CMatrix sigma_closed_form(const FacetVector& r) {
  const std::uint32_t p = r.p;
  const CMatrix a = PhaseSpace::get(p).a_operator(r);
  const CMatrix first = static_cast<double>(p) * p * p * CMatrix::Identity(p, p) - a;
  return Eigen::kroneckerProduct(first, CMatrix::Identity(p, p));
}

WitnessOperator sigma_operator(const FacetVector& r, double tol) {
  const std::uint32_t p = r.p;
  const std::size_t dim = std::size_t{p} * p;
  WitnessOperator out{r, CMatrix::Zero(dim, dim), 0.0};
  for (const auto& proj : witness_set(r)) {
    const CVector psi = state_vector(proj, p);
    out.sigma.noalias() += psi * psi.adjoint();
  }
  out.residual = (out.sigma - sigma_closed_form(r)).norm();
  if (out.residual > tol) {
    std::ostringstream msg;
    msg << "witness operator for facet " << to_string(r) << " deviates from closed form by "
        << out.residual;
    throw std::runtime_error(msg.str());
  }
  return out;
}

std::string export_dimacs(const ExclusivityGraph& g) {
  std::ostringstream os;
  os << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const auto& [u, v] : g.edges()) os << "e " << u + 1 << " " << v + 1 << "\n";
  return os.str();
}

std::string export_json(const ExclusivityGraph& g) {
  nlohmann::json j;
  j["p"] = g.p();
  j["facet"] = g.facet() ? nlohmann::json(g.facet()->r) : nlohmann::json(nullptr);
  nlohmann::json verts = nlohmann::json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    nlohmann::json rec = g.projectors().empty() ? nlohmann::json::object()
                                                : projector_json(g.projectors()[v], g.p());
    rec["id"] = v;
    rec["class"] = g.class_of(v);
    verts.push_back(std::move(rec));
  }
  j["vertices"] = std::move(verts);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["partition"] = g.partition();
  return j.dump() + "\n";
}

Partition greedy_clique_partition(std::size_t vertex_count, const std::vector<Edge>& edges) {
  std::vector<Bitset> adj(vertex_count, Bitset(vertex_count));
  for (const auto& [u, v] : edges) {
    adj[u].set(v);
    adj[v].set(u);
  }
  Partition out;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    bool placed = false;
    for (auto& cls : out) {
      if (std::all_of(cls.begin(), cls.end(), [&](std::size_t u) { return adj[v].test(u); })) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) out.push_back({v});
  }
  return out;
}

ExclusivityGraph import_dimacs(const std::string& text, std::optional<Partition> partition) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0, m = 0;
  bool header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> m)) throw std::invalid_argument("malformed DIMACS header on line " + std::to_string(line_no));
      header = true;
    } else if (tag == "e") {
      std::size_t u = 0, v = 0;
      if (!header || !(ls >> u >> v) || u == 0 || v == 0 || u > n || v > n) {
        throw std::invalid_argument("malformed DIMACS edge on line " + std::to_string(line_no));
      }
      edges.emplace_back(std::min(u, v) - 1, std::max(u, v) - 1);
    } else {
      throw std::invalid_argument("unknown DIMACS record on line " + std::to_string(line_no));
    }
  }
  if (!header) throw std::invalid_argument("DIMACS input has no 'p edge' header");
  if (edges.size() != m) {
    throw std::invalid_argument("DIMACS header declares " + std::to_string(m) + " edges, found " +
                                std::to_string(edges.size()));
  }
  Partition part = partition ? std::move(*partition) : greedy_clique_partition(n, edges);
  return ExclusivityGraph(n, edges, std::move(part));
}

StabProjector projector_from_json(const nlohmann::json& j, std::uint32_t p) {
  const std::string tag = j.at("tag");
  if (tag == "sep") {
    return SepProjector{j.at("basis").get<std::uint32_t>(), j.at("level").get<std::uint32_t>(),
                        j.at("k").get<std::uint32_t>()};
  }
  if (tag != "ent") throw std::invalid_argument("unknown projector tag '" + tag + "'");
  const auto& jb = j.at("b");
  CosetLabel b = jb.is_string() ? CosetLabel::infinity()
                                : CosetLabel::finite(Fp(jb.get<std::int64_t>(), p));
  const auto& jc = j.at("c");
  BpElement c(Fp(jc.at(0).get<std::int64_t>(), p), Fp(jc.at(1).get<std::int64_t>(), p));
  return EntProjector{b, c, Fp(j.at("x").get<std::int64_t>(), p), Fp(j.at("z").get<std::int64_t>(), p)};
}

ExclusivityGraph import_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::uint32_t p = j.value("p", 0u);
  std::optional<FacetVector> facet;
  if (j.contains("facet") && !j["facet"].is_null()) {
    facet = FacetVector{p, j["facet"].get<std::vector<std::uint32_t>>(), FacetKind::Generic};
    // Recover the simulable tag when the vector belongs to the family.
    for (const auto& f : facet_family(p))
      if (f == *facet) facet = f;
  }
  const auto& verts = j.at("vertices");
  std::vector<StabProjector> projs;
  for (const auto& rec : verts) {
    if (rec.contains("tag")) projs.push_back(projector_from_json(rec, p));
  }
  if (!projs.empty() && projs.size() != verts.size()) {
    throw std::invalid_argument("some but not all vertices carry projector data");
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  Partition part = j.contains("partition") ? j["partition"].get<Partition>()
                                           : greedy_clique_partition(verts.size(), edges);
  return ExclusivityGraph(verts.size(), edges, std::move(part), p, facet, std::move(projs));
}

Partition parse_partition_json(const std::string& text) {
  return nlohmann::json::parse(text).at("partition").get<Partition>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace stabctx
