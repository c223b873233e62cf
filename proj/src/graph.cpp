#include "wdn/graph.hpp"

#include <limits>

#include "wdn/errors.hpp"

namespace wdn {

namespace {

constexpr std::size_t kMaxVertices = std::numeric_limits<std::uint32_t>::max();

std::unordered_map<std::string, std::size_t> index_tokens(const std::vector<std::string>& tokens,
                                                          const char* role) {
  std::unordered_map<std::string, std::size_t> lookup;
  lookup.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!lookup.emplace(tokens[i], i).second) {
      throw InputError(std::string("duplicate ") + role + " token '" + tokens[i] + "'");
    }
  }
  return lookup;
}

}  // namespace

DirectedGraph DirectedGraph::from_parts(std::vector<std::string> origins,
                                        std::vector<std::string> terminals,
                                        std::vector<Edge> edges) {
  if (origins.size() > kMaxVertices || terminals.size() > kMaxVertices) {
    throw InputError("too many vertices");
  }
  DirectedGraph g;
  g.origin_lookup_ = index_tokens(origins, "origin");
  g.terminal_lookup_ = index_tokens(terminals, "terminal");
  g.origins_ = std::move(origins);
  g.terminals_ = std::move(terminals);

  g.edge_lookup_.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.origin >= g.origins_.size() || edge.terminal >= g.terminals_.size()) {
      throw InputError("edge " + std::to_string(e) + " references a missing vertex");
    }
    if (!g.edge_lookup_.emplace(edge_key(edge.origin, edge.terminal), e).second) {
      throw InputError("duplicate edge " + g.origins_[edge.origin] + "->" +
                       g.terminals_[edge.terminal]);
    }
  }
  g.edges_ = std::move(edges);
  g.out_ = build_csr(g.origins_.size(), g.edges_, true);
  g.in_ = build_csr(g.terminals_.size(), g.edges_, false);
  return g;
}

DirectedGraph::Csr DirectedGraph::build_csr(std::size_t vertex_count, std::span<const Edge> edges,
                                            bool by_origin) {
  Csr csr;
  csr.offsets.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) ++csr.offsets[(by_origin ? e.origin : e.terminal) + 1];
  for (std::size_t v = 0; v < vertex_count; ++v) csr.offsets[v + 1] += csr.offsets[v];
  csr.items.resize(edges.size());
  std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  // Edge ids are visited in increasing order, so each row comes out sorted.
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const std::size_t v = by_origin ? edges[id].origin : edges[id].terminal;
    csr.items[cursor[v]++] = id;
  }
  return csr;
}

const std::string& DirectedGraph::origin_token(std::size_t o) const {
  if (o >= origins_.size()) throw DomainError("origin index out of range");
  return origins_[o];
}

const std::string& DirectedGraph::terminal_token(std::size_t t) const {
  if (t >= terminals_.size()) throw DomainError("terminal index out of range");
  return terminals_[t];
}

const Edge& DirectedGraph::edge(std::size_t e) const {
  if (e >= edges_.size()) throw DomainError("edge index out of range");
  return edges_[e];
}

std::optional<std::size_t> DirectedGraph::find_origin(std::string_view token) const {
  auto it = origin_lookup_.find(std::string(token));
  if (it == origin_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedGraph::find_terminal(std::string_view token) const {
  auto it = terminal_lookup_.find(std::string(token));
  if (it == terminal_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedGraph::find_edge(std::size_t origin, std::size_t terminal) const {
  auto it = edge_lookup_.find(edge_key(origin, terminal));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedGraph::find_edge(std::string_view origin,
                                                    std::string_view terminal) const {
  const auto o = find_origin(origin);
  const auto t = find_terminal(terminal);
  if (!o || !t) return std::nullopt;
  return find_edge(*o, *t);
}

std::span<const std::size_t> DirectedGraph::out_edges(std::size_t o) const {
  if (o >= origins_.size()) throw DomainError("origin index out of range");
  return std::span<const std::size_t>(out_.items).subspan(out_.offsets[o],
                                                          out_.offsets[o + 1] - out_.offsets[o]);
}

std::span<const std::size_t> DirectedGraph::in_edges(std::size_t t) const {
  if (t >= terminals_.size()) throw DomainError("terminal index out of range");
  return std::span<const std::size_t>(in_.items).subspan(in_.offsets[t],
                                                         in_.offsets[t + 1] - in_.offsets[t]);
}

bool DirectedGraph::indices_consistent() const {
  const Csr out = build_csr(origins_.size(), edges_, true);
  const Csr in = build_csr(terminals_.size(), edges_, false);
  if (out.offsets != out_.offsets || out.items != out_.items) return false;
  if (in.offsets != in_.offsets || in.items != in_.items) return false;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto it = edge_lookup_.find(edge_key(edges_[e].origin, edges_[e].terminal));
    if (it == edge_lookup_.end() || it->second != e) return false;
  }
  return edge_lookup_.size() == edges_.size();
}

std::string DirectedGraph::edge_label(std::size_t e) const {
  const Edge& ed = edge(e);
  return origins_[ed.origin] + "->" + terminals_[ed.terminal];
}

DirectedGraph build_graph(std::span<const TokenEdge> edge_list) {
  if (edge_list.empty()) throw InputError("cannot build a graph from an empty edge list");

  std::vector<std::string> origins;
  std::vector<std::string> terminals;
  std::unordered_map<std::string, std::size_t> origin_ids;
  std::unordered_map<std::string, std::size_t> terminal_ids;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<Edge> edges;

  for (const auto& [o_tok, t_tok] : edge_list) {
    auto [oit, o_new] = origin_ids.emplace(o_tok, origins.size());
    if (o_new) origins.push_back(o_tok);
    auto [tit, t_new] = terminal_ids.emplace(t_tok, terminals.size());
    if (t_new) terminals.push_back(t_tok);
    const std::uint64_t key = (static_cast<std::uint64_t>(oit->second) << 32) | tit->second;
    if (seen.emplace(key, edges.size()).second) edges.push_back({oit->second, tit->second});
  }
  return DirectedGraph::from_parts(std::move(origins), std::move(terminals), std::move(edges));
}

}  // namespace wdn
