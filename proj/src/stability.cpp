#include "genset/stability.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "genset/kneser.hpp"

namespace genset {

namespace {

VertexSet common_neighbors(const Graph& g, const VertexList& vertices) {
  VertexSet common = g.all_vertices();
  for (int v : vertices) common &= g.neighbors(v);
  return common;
}

std::int64_t edges_within(const Graph& g, const VertexSet& set) {
  std::int64_t twice = 0;
  for (auto v = set.find_first(); v != VertexSet::npos; v = set.find_next(v)) {
    twice += static_cast<std::int64_t>((g.neighbors(static_cast<int>(v)) & set).count());
  }
  return twice / 2;
}

void check_k(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (g.order() < k + 1) {
    throw std::invalid_argument("graph order must be at least k+1");
  }
}

bool has_clique(const std::vector<std::uint64_t>& adj, std::uint64_t candidates, int need) {
  if (need == 0) return true;
  if (std::popcount(candidates) < need) return false;
  while (candidates != 0) {
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    if (has_clique(adj, candidates & adj[v], need - 1)) return true;
  }
  return false;
}

class PartitionSearch {
 public:
  PartitionSearch(std::vector<std::uint64_t> adj, int n, int k)
      : adj_(std::move(adj)), n_(n), k_(k), color_sets_(k, 0) {
    for (int v = 0; v < n; ++v) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return std::popcount(adj_[a]) > std::popcount(adj_[b]);
    });
  }

  std::int64_t solve() {
    // Greedy start: each vertex joins the class where it has fewest neighbours.
    std::vector<std::uint64_t> sets(k_, 0);
    std::int64_t greedy = 0;
    for (int v : order_) {
      int pick = 0;
      int cost = std::popcount(adj_[v] & sets[0]);
      for (int c = 1; c < k_; ++c) {
        const int here = std::popcount(adj_[v] & sets[c]);
        if (here < cost) {
          pick = c;
          cost = here;
        }
      }
      sets[pick] |= std::uint64_t{1} << v;
      greedy += cost;
    }
    best_ = greedy;
    descend(0, 0, 0);
    return best_;
  }

 private:
  void descend(std::size_t depth, int used, std::int64_t cost) {
    if (cost >= best_) return;
    if (depth == order_.size()) {
      best_ = cost;
      return;
    }
    const int v = order_[depth];
    const std::uint64_t bit = std::uint64_t{1} << v;
    const int limit = std::min(used + 1, k_);
    for (int c = 0; c < limit; ++c) {
      const int extra = std::popcount(adj_[v] & color_sets_[c]);
      color_sets_[c] |= bit;
      descend(depth + 1, std::max(used, c + 1), cost + extra);
      color_sets_[c] &= ~bit;
    }
  }

  std::vector<std::uint64_t> adj_;
  int n_;
  int k_;
  std::vector<int> order_;
  std::vector<std::uint64_t> color_sets_;
  std::int64_t best_ = 0;
};

nlohmann::json surd_json(const SurdValue& s) {
  return {{"rational_part", to_fraction_string(s.rational_part)},
          {"sqrt_coeff", to_fraction_string(s.sqrt_coeff)},
          {"radicand", to_fraction_string(s.radicand)},
          {"approx", s.approx()}};
}

nlohmann::json one_based(const VertexList& vertices) {
  auto out = nlohmann::json::array();
  for (int v : vertices) out.push_back(v + 1);
  return out;
}

}  // namespace

bool meets_degree_threshold(int degree, int order, int k, const Rational& delta) {
  const Rational span = order - 1;
  const Rational slack = (Rational(1) - Rational(1, k)) * span - degree;
  if (slack <= 0) return true;
  return delta * span * span >= slack * slack;
}

PruneResult min_degree_prune(const Graph& g, int k, const Rational& delta) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (delta < 0 || delta > 1) throw std::invalid_argument("delta must lie in [0, 1]");
  VertexSet alive = g.all_vertices();
  std::vector<PruneStep> removed;
  while (true) {
    const int order = static_cast<int>(alive.count());
    int victim = -1;
    int victim_degree = 0;
    for (auto v = alive.find_first(); v != VertexSet::npos; v = alive.find_next(v)) {
      const int degree = static_cast<int>((g.neighbors(static_cast<int>(v)) & alive).count());
      if (!meets_degree_threshold(degree, order, k, delta)) {
        victim = static_cast<int>(v);
        victim_degree = degree;
        break;
      }
    }
    if (victim < 0) break;
    removed.push_back({victim, victim_degree, order});
    alive.reset(victim);
  }
  VertexList kept;
  for (auto v = alive.find_first(); v != VertexSet::npos; v = alive.find_next(v)) {
    kept.push_back(static_cast<int>(v));
  }
  return {g.induced(kept), kept, std::move(removed)};
}

CliqueClassification classify_cliques(const Graph& g, int k) {
  check_k(g, k);
  const int n = g.order();
  CliqueClassification out;
  out.k = k;
  out.alpha = Rational(clique_count(g, k + 1), binomial(n, k + 1));

  const auto k_cliques = list_cliques(g, k);
  if (k_cliques.empty()) throw EmptyDomainError("graph has no k-clique");

  const Rational facet_scale(binomial(n - k + 1, 2));
  std::set<VertexList> dangerous;
  for (const auto& t : list_cliques(g, k - 1)) {
    const std::int64_t containing = edges_within(g, common_neighbors(g, t));
    if (containing > 0 && at_least_sqrt_times(containing, out.alpha, facet_scale)) {
      dangerous.insert(t);
      out.dangerous.push_back(t);
    }
  }

  const Rational clique_scale(n - k);
  for (const auto& s : k_cliques) {
    const auto containing = static_cast<std::int64_t>(common_neighbors(g, s).count());
    const bool treacherous =
        containing > 0 && at_least_sqrt_times(containing, out.alpha, clique_scale);
    if (treacherous) out.treacherous.push_back(s);
    bool bad = treacherous;
    for (std::size_t drop = 0; drop < s.size() && !bad; ++drop) {
      VertexList facet;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != drop) facet.push_back(s[i]);
      }
      bad = dangerous.count(facet) > 0;
    }
    (bad ? out.bad : out.good).push_back(s);
  }
  return out;
}

std::int64_t f_value(const Graph& g, const VertexList& s) {
  if (s.size() < 2) throw std::invalid_argument("f_value needs a clique of size >= 2");
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j] || !g.has_edge(s[i], s[j])) {
        throw std::invalid_argument("f_value: vertex set is not a clique");
      }
    }
  }
  std::int64_t total = 0;
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    VertexList facet;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != drop) facet.push_back(s[i]);
    }
    total += static_cast<std::int64_t>(common_neighbors(g, facet).count());
  }
  return total;
}

NoGoodCliqueError::NoGoodCliqueError(Rational alpha)
    : EmptyDomainError("no good k-clique exists (alpha = " + to_fraction_string(alpha) + ")"),
      alpha_(std::move(alpha)) {}

StabilityReport extract_k_partition(const Graph& g, int k) {
  const auto classes = classify_cliques(g, k);
  const int n = g.order();
  StabilityReport report;
  report.k = k;
  report.n = n;
  report.alpha = classes.alpha;
  const auto counts = clique_counts(g, k);
  const Rational d_lower(counts[k - 1], binomial(n, k - 1));
  const Rational d_k(counts[k], binomial(n, k));
  const BigInt k_fact = factorial(k);
  report.beta = d_lower * Rational(big_pow(BigInt(k), k - 1), k_fact) - 1;
  report.gamma = Rational(1) - d_k * Rational(big_pow(BigInt(k), k), k_fact);
  report.good_cliques = classes.good.size();
  report.bad_cliques = classes.bad.size();
  report.dangerous_sets = classes.dangerous.size();
  report.treacherous_sets = classes.treacherous.size();
  if (classes.good.empty()) throw NoGoodCliqueError(classes.alpha);

  // Good clique with the largest f-value; list order breaks ties lexicographically.
  const VertexList* chosen = nullptr;
  std::int64_t best = -1;
  for (const auto& s : classes.good) {
    const std::int64_t value = f_value(g, s);
    if (value > best) {
      best = value;
      chosen = &s;
    }
  }
  report.chosen_clique = *chosen;
  report.f_value_of_chosen = best;

  const VertexSet shared = common_neighbors(g, *chosen);
  std::vector<int> class_of(n, -1);
  report.partition.assign(k, {});
  for (int i = 0; i < k; ++i) {
    VertexList facet;
    for (int j = 0; j < k; ++j) {
      if (j != i) facet.push_back((*chosen)[j]);
    }
    const VertexSet part = common_neighbors(g, facet) - shared;
    for (auto v = part.find_first(); v != VertexSet::npos; v = part.find_next(v)) {
      class_of[v] = i;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (class_of[v] >= 0) report.partition[class_of[v]].push_back(v);
  }
  for (int v = 0; v < n; ++v) {
    if (class_of[v] >= 0) continue;
    int smallest = 0;
    for (int i = 1; i < k; ++i) {
      if (report.partition[i].size() < report.partition[smallest].size()) smallest = i;
    }
    class_of[v] = smallest;
    report.partition[smallest].push_back(v);
  }
  for (auto& part : report.partition) std::sort(part.begin(), part.end());
  for (auto [u, v] : g.edges()) {
    if (class_of[u] == class_of[v]) report.removed.emplace_back(u, v);
  }
  report.removed_edges = static_cast<std::int64_t>(report.removed.size());

  const Rational beta_c = std::max(report.beta, Rational(0));
  const Rational gamma_c = std::max(report.gamma, Rational(0));
  const Rational k_pow_k1(big_pow(BigInt(k), k + 1));
  const Rational edge_coeff = Rational(8) * k_pow_k1 * (k + 1) / Rational(k_fact);
  report.psi = {2 * beta_c + 2 * gamma_c + Rational(2 * k, n), edge_coeff, report.alpha};
  const Rational pairs(binomial(n, 2));
  report.removal_bound = {report.psi.rational_part * pairs, report.psi.sqrt_coeff * pairs,
                          report.alpha};
  if (gamma_c < 1) {
    report.psi0 = {Rational(1) - (1 - gamma_c) / (1 + beta_c),
                   k_pow_k1 * (k + 1) / ((1 - gamma_c) * Rational(k_fact)), report.alpha};
  }
  report.hypotheses_hold = report.gamma <= Rational(1, 2);
  report.within_bound = report.removal_bound.bounds_from_above(report.removed_edges);
  return report;
}

nlohmann::json to_json(const StabilityReport& report) {
  nlohmann::json partition = nlohmann::json::array();
  for (const auto& part : report.partition) partition.push_back(one_based(part));
  nlohmann::json removed = nlohmann::json::array();
  for (auto [u, v] : report.removed) removed.push_back({u + 1, v + 1});
  return {{"k", report.k},
          {"n", report.n},
          {"alpha", to_fraction_string(report.alpha)},
          {"beta", to_fraction_string(report.beta)},
          {"gamma", to_fraction_string(report.gamma)},
          {"psi0", surd_json(report.psi0)},
          {"psi", surd_json(report.psi)},
          {"removal_bound", surd_json(report.removal_bound)},
          {"hypotheses_hold", report.hypotheses_hold},
          {"within_bound", report.within_bound},
          {"chosen_clique", one_based(report.chosen_clique)},
          {"f_value_of_chosen", report.f_value_of_chosen},
          {"good_cliques", report.good_cliques},
          {"bad_cliques", report.bad_cliques},
          {"dangerous_sets", report.dangerous_sets},
          {"treacherous_sets", report.treacherous_sets},
          {"partition", partition},
          {"removed_edges", report.removed_edges},
          {"removed_edge_list", removed}};
}

// ---------------------------------------------------------------------------

MaxCut max_cut_exact(const Graph& g) {
  const int n = g.order();
  if (n > 24) throw CapacityError("exact max-cut supports order <= 24");
  MaxCut best;
  if (n <= 1) return best;
  const auto words = g.adjacency_words();
  std::vector<std::uint32_t> adj(words.begin(), words.end());
  // Vertex 0 stays on side 0; Gray code over the other n-1 vertices.
  std::uint32_t side = 0;
  std::int64_t cut = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int v = std::countr_zero(i) + 1;
    const std::uint32_t bit = std::uint32_t{1} << v;
    const std::uint32_t same = (side & bit) ? (side & ~bit) : (~side & ~bit);
    const std::uint32_t other = (side & bit) ? ~side : side;
    cut += std::popcount(adj[v] & same) - std::popcount(adj[v] & other);
    side ^= bit;
    if (cut > best.value) {
      best.value = cut;
      best.side = side;
    }
  }
  return best;
}

std::int64_t bipartization_distance_exact(const Graph& g) {
  return g.edge_count() - max_cut_exact(g).value;
}

std::int64_t kpartization_distance_exact(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int n = g.order();
  if (k == 1) return g.edge_count();
  if (k >= n) return 0;
  if ((k >= 3 && n > 16) || n > 24) {
    throw CapacityError("exact k-partization supports order <= 16 (order <= 24 for k = 2)");
  }
  PartitionSearch search(g.adjacency_words(), n, k);
  return search.solve();
}

ShearerReport shearer_check(const SubsetMask& ground, std::span<const Mask> cover, int r,
                            const SetFamily& family) {
  if (r < 1) throw std::invalid_argument("cover multiplicity r must be at least 1");
  const Mask s = ground.bits();
  for (Mask a : cover) {
    if ((a & ~s) != 0) throw std::invalid_argument("cover set is not inside the ground set");
  }
  for (int e = 0; e < ground.ground_n(); ++e) {
    if (!((s >> e) & 1U)) continue;
    int hits = 0;
    for (Mask a : cover) hits += (a >> e) & 1U;
    if (hits < r) {
      throw std::invalid_argument("cover is not an r-cover: element " + std::to_string(e + 1) +
                                  " lies in fewer than r sets");
    }
  }
  for (Mask f : family.members()) {
    if ((f & ~s) != 0) throw std::invalid_argument("family member is not inside the ground set");
  }
  ShearerReport report;
  report.lhs = big_pow(BigInt(family.size()), static_cast<unsigned>(r));
  report.rhs = 1;
  for (Mask a : cover) {
    std::vector<Mask> projection;
    for (Mask f : family.members()) projection.push_back(f & a);
    std::sort(projection.begin(), projection.end());
    projection.erase(std::unique(projection.begin(), projection.end()), projection.end());
    report.projection_sizes.push_back(projection.size());
    report.rhs *= projection.size();
  }
  report.holds = report.lhs <= report.rhs;
  return report;
}

EdgeBoundReport kpartite_edge_bound_check(const Graph& g,
                                          const std::vector<VertexList>& parts) {
  std::vector<int> class_of(g.order(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int v : parts[i]) {
      if (v < 0 || v >= g.order()) throw std::invalid_argument("partition vertex out of range");
      if (class_of[v] >= 0) throw std::invalid_argument("partition classes overlap");
      class_of[v] = static_cast<int>(i);
    }
  }
  if (std::find(class_of.begin(), class_of.end(), -1) != class_of.end()) {
    throw std::invalid_argument("partition does not cover every vertex");
  }
  for (auto [u, v] : g.edges()) {
    if (class_of[u] == class_of[v]) {
      throw std::invalid_argument("graph has an edge inside a partition class");
    }
  }
  EdgeBoundReport report;
  report.k = static_cast<int>(parts.size());
  report.edges = g.edge_count();
  report.k_cliques = clique_count(g, report.k);
  report.lhs = big_pow(BigInt(report.edges), static_cast<unsigned>(report.k));
  report.rhs = big_pow(binomial(report.k, 2), static_cast<unsigned>(report.k)) *
               report.k_cliques * report.k_cliques;
  report.holds = report.lhs >= report.rhs;
  return report;
}

SampledDensityBound sampled_density_bound(const Graph& g, int k, int r, int l) {
  const int n = g.order();
  if (r < 1 || r > k || k >= l || l > n) {
    throw std::invalid_argument("sampled_density_bound needs 1 <= r <= k < l <= order");
  }
  if (n > 62) throw CapacityError("sampled_density_bound supports order <= 62");
  const BigInt subsets = binomial(n, l);
  if (subsets > 5'000'000) throw CapacityError("too many l-subsets to enumerate");
  const auto adj = g.adjacency_words();
  std::uint64_t hits = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  // Gosper's hack walks every l-subset of the vertex set in increasing order.
  for (std::uint64_t u = (std::uint64_t{1} << l) - 1; u < limit;) {
    hits += has_clique(adj, u, k + 1) ? 1 : 0;
    const std::uint64_t low = u & (~u + 1);
    const std::uint64_t ripple = u + low;
    u = (((ripple ^ u) >> 2) / low) | ripple;
  }
  SampledDensityBound out;
  out.zeta = Rational(BigInt(hits), subsets);
  out.free_bound = Rational(falling_factorial(k, r), big_pow(BigInt(k), r)) *
                   Rational(big_pow(BigInt(l), r), falling_factorial(l, r));
  out.bound = (1 - out.zeta) * out.free_bound + out.zeta;
  out.density = clique_density(g, r).value;
  return out;
}

}  // namespace genset
