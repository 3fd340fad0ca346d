#pragma once

// Disjointness graphs, Turán graphs and exact subgraph counting.

#include <cstdint>
#include <vector>

#include "genset/graph.hpp"
#include "genset/rational.hpp"
#include "genset/setfam.hpp"

namespace genset {

inline constexpr int kMaxPatternOrder = 12;
inline constexpr int kMaxDisjointnessOrder = 4096;
inline constexpr int kMaxChromaticOrder = 30;

/// Small labelled pattern graph; vertices 0..order-1.
class PatternGraph {
 public:
  PatternGraph(int order, const std::vector<Edge>& edges);

  int order() const noexcept { return order_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::uint16_t neighbor_mask(int v) const { return adjacency_.at(v); }
  bool adjacent(int u, int v) const { return (adjacency_.at(u) >> v) & 1U; }
  Graph to_graph() const { return Graph(order_, edges_); }

  friend bool operator==(const PatternGraph&, const PatternGraph&) = default;

 private:
  int order_;
  std::vector<Edge> edges_;  // (u, v), u < v, sorted
  std::vector<std::uint16_t> adjacency_;
};

/// Class sizes t_1..t_f of a blow-up, one per pattern vertex.
struct BlowupSpec {
  std::vector<int> t;
};

Graph disjointness_graph(const SetFamily& family);
/// Complete s-partite graph on n vertices; vertex v lies in class v mod s.
Graph turan_graph(int s, int n);
std::int64_t turan_edge_count(int s, int n);

/// Exact number of r-vertex cliques.
BigInt clique_count(const Graph& g, int r);
/// Clique counts for every size 0..max_r in one pivoting pass.
std::vector<BigInt> clique_counts(const Graph& g, int max_r);
/// All r-cliques as sorted vertex lists, in lexicographic order.
std::vector<std::vector<int>> list_cliques(const Graph& g, int r);

struct CliqueDensity {
  Rational value;
  bool defined = true;  // false when order < r; value is then 0
};
CliqueDensity clique_density(const Graph& g, int r);

BigInt hom_count(const PatternGraph& p, const Graph& g);
BigInt injective_hom_count(const PatternGraph& p, const Graph& g);
Rational hom_density(const PatternGraph& p, const Graph& g);
Rational injective_density(const PatternGraph& p, const Graph& g);

PatternGraph blow_up(const PatternGraph& p, const BlowupSpec& spec);
PatternGraph cycle(int l);
PatternGraph complete(int r);

int chromatic_number(const Graph& g);
bool is_bipartite(const Graph& g);

}  // namespace genset
