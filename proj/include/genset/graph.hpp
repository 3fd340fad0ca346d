#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace genset {

using VertexSet = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..order-1 with bitset adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);
  Graph(int order, const std::vector<Edge>& edges);

  int order() const noexcept { return static_cast<int>(adjacency_.size()); }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const VertexSet& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).count()); }
  std::int64_t edge_count() const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  VertexSet empty_set() const { return VertexSet(adjacency_.size()); }
  VertexSet all_vertices() const;

  /// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
  Graph induced(const std::vector<int>& vertices) const;

  /// Adjacency rows as 64-bit words; requires order <= 64.
  std::vector<std::uint64_t> adjacency_words() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  std::vector<VertexSet> adjacency_;
};

/// Exchange format: `graph n=<int> m=<int>` then m lines `u v` (1-based).
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

}  // namespace genset
