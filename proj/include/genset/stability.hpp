#pragma once

// Constructive stability tools: pruning to high minimum degree, classifying
// k-cliques by how many (k+1)-cliques contain them, extracting a k-partition
// with few intra-class edges, and exact partization distances.

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "genset/errors.hpp"
#include "genset/graph.hpp"
#include "genset/rational.hpp"
#include "genset/setfam.hpp"

namespace genset {

using VertexList = std::vector<int>;

struct PruneStep {
  int vertex;        // label in the input graph
  int degree;        // degree at deletion time
  int order_before;  // order of the graph the vertex was deleted from
};

struct PruneResult {
  Graph graph;             // induced on `kept`, relabelled 0..|kept|-1
  VertexList kept;         // input labels of surviving vertices, increasing
  std::vector<PruneStep> removed;
};

/// Exact test of degree >= (1 - 1/k - sqrt(delta)) * (order - 1).
bool meets_degree_threshold(int degree, int order, int k, const Rational& delta);

PruneResult min_degree_prune(const Graph& g, int k, const Rational& delta);

struct CliqueClassification {
  int k = 0;
  Rational alpha;                     // K_{k+1}(G) / C(n, k+1)
  std::vector<VertexList> dangerous;  // (k-1)-cliques
  std::vector<VertexList> treacherous;
  std::vector<VertexList> good;       // k-cliques
  std::vector<VertexList> bad;
};

CliqueClassification classify_cliques(const Graph& g, int k);

/// Sum over the (k-1)-subsets T of the clique s of |common neighbourhood(T)|.
std::int64_t f_value(const Graph& g, const VertexList& s);

class NoGoodCliqueError : public EmptyDomainError {
 public:
  explicit NoGoodCliqueError(Rational alpha);
  const Rational& alpha() const noexcept { return alpha_; }

 private:
  Rational alpha_;
};

struct StabilityReport {
  int k = 0;
  int n = 0;
  Rational alpha;  // K_{k+1}-density
  Rational beta;   // K_{k-1}-density = (1 + beta) k!/k^{k-1}
  Rational gamma;  // K_k-density = (1 - gamma) k!/k^k
  SurdValue psi0;           // good-clique threshold 1 - (1-γ)/(1+β) + ...
  SurdValue psi;            // edge-removal fraction 2β+2γ+c√α+2k/n
  SurdValue removal_bound;  // psi * C(n, 2)
  bool hypotheses_hold = false;
  bool within_bound = false;
  VertexList chosen_clique;
  std::int64_t f_value_of_chosen = 0;
  std::size_t good_cliques = 0;
  std::size_t bad_cliques = 0;
  std::size_t dangerous_sets = 0;
  std::size_t treacherous_sets = 0;
  std::vector<VertexList> partition;
  std::vector<Edge> removed;
  std::int64_t removed_edges = 0;
};

StabilityReport extract_k_partition(const Graph& g, int k);
nlohmann::json to_json(const StabilityReport& report);

struct MaxCut {
  std::int64_t value = 0;
  std::uint32_t side = 0;  // vertices on side 1
};

MaxCut max_cut_exact(const Graph& g);
std::int64_t bipartization_distance_exact(const Graph& g);
std::int64_t kpartization_distance_exact(const Graph& g, int k);

struct ShearerReport {
  BigInt lhs;  // |F|^r
  BigInt rhs;  // product of projection sizes
  std::vector<std::size_t> projection_sizes;
  bool holds = false;
};

ShearerReport shearer_check(const SubsetMask& ground, std::span<const Mask> cover, int r,
                            const SetFamily& family);

struct EdgeBoundReport {
  int k = 0;
  std::int64_t edges = 0;
  BigInt k_cliques;
  BigInt lhs;  // e^k
  BigInt rhs;  // C(k,2)^k K_k^2
  bool holds = false;
};

EdgeBoundReport kpartite_edge_bound_check(const Graph& g,
                                          const std::vector<VertexList>& parts);

struct SampledDensityBound {
  Rational zeta;        // fraction of l-subsets containing K_{k+1}
  Rational free_bound;  // K_r-density bound for K_{k+1}-free l-vertex graphs
  Rational bound;       // (1 - zeta) free_bound + zeta
  Rational density;     // exact K_r-density of g
};

SampledDensityBound sampled_density_bound(const Graph& g, int k, int r, int l);

}  // namespace genset
