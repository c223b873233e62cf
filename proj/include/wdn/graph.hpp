#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wdn {

/// A directed edge stored by dense origin and terminal indices.
struct Edge {
  std::size_t origin = 0;
  std::size_t terminal = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// (origin token, terminal token) as read from an edge list.
using TokenEdge = std::pair<std::string, std::string>;

/**
 * Immutable directed graph G = (O, T, E).
 *
 * Origins and terminals live in separate index spaces, so a token that
 * appears both as a rater and as a ratee is two role-distinct elements.
 * Edges are unique (origin, terminal) pairs. Adjacency is kept in CSR form:
 * out_edges(o) lists the ids of edges leaving origin o and in_edges(t) the
 * ids of edges entering terminal t, both in ascending edge-id order.
 */
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Builds a graph from explicit vertex lists and index edges. Vertices
  /// without edges are allowed. Throws InputError on duplicate tokens,
  /// dangling endpoints or duplicate edges.
  static DirectedGraph from_parts(std::vector<std::string> origins,
                                  std::vector<std::string> terminals,
                                  std::vector<Edge> edges);

  std::size_t origin_count() const noexcept { return origins_.size(); }
  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& origin_token(std::size_t o) const;
  const std::string& terminal_token(std::size_t t) const;
  std::span<const std::string> origin_tokens() const noexcept { return origins_; }
  std::span<const std::string> terminal_tokens() const noexcept { return terminals_; }

  const Edge& edge(std::size_t e) const;
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<std::size_t> find_origin(std::string_view token) const;
  std::optional<std::size_t> find_terminal(std::string_view token) const;
  std::optional<std::size_t> find_edge(std::size_t origin, std::size_t terminal) const;
  std::optional<std::size_t> find_edge(std::string_view origin, std::string_view terminal) const;

  /// Edge ids leaving origin `o`.
  std::span<const std::size_t> out_edges(std::size_t o) const;
  /// Edge ids entering terminal `t`.
  std::span<const std::size_t> in_edges(std::size_t t) const;

  /// Rebuilds both adjacency indices from the edge list and compares them
  /// with the stored ones.
  bool indices_consistent() const;

  /// "o->t" label used in reports and prediction files.
  std::string edge_label(std::size_t e) const;

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> items;
  };

  static Csr build_csr(std::size_t vertex_count, std::span<const Edge> edges, bool by_origin);
  static std::uint64_t edge_key(std::size_t o, std::size_t t) noexcept {
    return (static_cast<std::uint64_t>(o) << 32) | static_cast<std::uint64_t>(t);
  }

  std::vector<std::string> origins_;
  std::vector<std::string> terminals_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> origin_lookup_;
  std::unordered_map<std::string, std::size_t> terminal_lookup_;
  std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
  Csr out_;
  Csr in_;
};

/// Builds a graph whose origins and terminals are exactly the tokens in the
/// first and second position of `edge_list`, indexed in order of first
/// appearance. Repeated pairs collapse to one edge. Throws InputError on an
/// empty list.
DirectedGraph build_graph(std::span<const TokenEdge> edge_list);

}  // namespace wdn
