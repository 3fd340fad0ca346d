#include "genset/kneser.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "genset/errors.hpp"

namespace genset {

namespace {

using Words = std::vector<std::uint64_t>;

// Pivoter-style succinct clique tree: every clique is a set of "hold"
// vertices on a root-to-leaf path plus any subset of that path's pivots.
class CliqueTreeCounter {
 public:
  CliqueTreeCounter(const Graph& g, int max_r) : g_(g), max_r_(max_r) {}

  void run() { visit(g_.all_vertices(), 0, 0); }

  std::vector<BigInt> counts() const {
    std::vector<BigInt> out(static_cast<std::size_t>(max_r_) + 1, 0);
    for (const auto& [key, leaves] : leaves_) {
      const auto [hold, pivots] = key;
      for (int r = hold; r <= std::min(max_r_, hold + pivots); ++r) {
        out[r] += binomial(pivots, r - hold) * leaves;
      }
    }
    return out;
  }

 private:
  void visit(VertexSet candidates, int hold, int pivots) {
    if (hold > max_r_) return;
    if (candidates.none()) {
      ++leaves_[{hold, pivots}];
      return;
    }
    std::size_t pivot = VertexSet::npos;
    std::size_t best = 0;
    for (auto v = candidates.find_first(); v != VertexSet::npos;
         v = candidates.find_next(v)) {
      const std::size_t reach = (g_.neighbors(static_cast<int>(v)) & candidates).count();
      if (pivot == VertexSet::npos || reach > best) {
        pivot = v;
        best = reach;
      }
    }
    const VertexSet branch = candidates - g_.neighbors(static_cast<int>(pivot));
    VertexSet rest = candidates;
    rest.reset(pivot);
    visit(g_.neighbors(static_cast<int>(pivot)) & rest, hold, pivots + 1);
    for (auto v = branch.find_first(); v != VertexSet::npos; v = branch.find_next(v)) {
      if (v == pivot) continue;
      rest.reset(v);
      visit(g_.neighbors(static_cast<int>(v)) & rest, hold + 1, pivots);
    }
  }

  const Graph& g_;
  int max_r_;
  std::map<std::pair<int, int>, std::uint64_t> leaves_;
};

void collect_cliques(const Graph& g, int r, std::vector<int>& current,
                     const VertexSet& candidates, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == r) {
    out.push_back(current);
    return;
  }
  for (auto v = candidates.find_first(); v != VertexSet::npos;
       v = candidates.find_next(v)) {
    VertexSet next = candidates & g.neighbors(static_cast<int>(v));
    // Only extend with larger labels so each clique appears once, sorted.
    for (auto u = next.find_first(); u != VertexSet::npos && u <= v; u = next.find_next(u)) {
      next.reset(u);
    }
    current.push_back(static_cast<int>(v));
    collect_cliques(g, r, current, next, out);
    current.pop_back();
  }
}

void check_hom_capacity(const PatternGraph& p, const Graph& g) {
  if (g.order() > 64) throw CapacityError("homomorphism counting needs order(G) <= 64");
  if (big_pow(BigInt(g.order()), static_cast<unsigned>(p.order())) >=
      (BigInt(1) << 126)) {
    throw CapacityError("homomorphism count may exceed 126 bits");
  }
}

BigInt to_big(unsigned __int128 value) {
  BigInt out = static_cast<std::uint64_t>(value >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(value);
  return out;
}

// Homomorphisms are counted by assigning a minimum vertex cover of the
// pattern explicitly; the remaining pattern vertices form an independent set
// whose images are then chosen independently from common neighbourhoods.
class HomCounter {
 public:
  HomCounter(const PatternGraph& p, const Graph& g)
      : p_(p), n_(g.order()), adj_(g.adjacency_words()) {
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    const int f = p.order();
    std::uint32_t cover = (std::uint32_t{1} << f) - 1;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << f); ++mask) {
      if (std::popcount(mask) >= std::popcount(cover)) continue;
      bool ok = true;
      for (auto [u, v] : p.edges()) {
        if (!((mask >> u) & 1U) && !((mask >> v) & 1U)) {
          ok = false;
          break;
        }
      }
      if (ok) cover = mask;
    }
    std::uint32_t placed = 0;
    while (placed != cover) {
      int pick = -1;
      int pick_links = -1;
      for (int v = 0; v < f; ++v) {
        if (!((cover >> v) & 1U) || ((placed >> v) & 1U)) continue;
        const int links = std::popcount(p.neighbor_mask(v) & placed);
        if (links > pick_links) {
          pick = v;
          pick_links = links;
        }
      }
      order_.push_back(pick);
      placed |= std::uint32_t{1} << pick;
    }
    slot_of_.assign(f, -1);
    for (std::size_t i = 0; i < order_.size(); ++i) slot_of_[order_[i]] = static_cast<int>(i);
    for (int v : order_) earlier_.push_back(neighbor_slots(v, true));
    for (int v = 0; v < f; ++v) {
      if (!((cover >> v) & 1U)) free_.push_back(neighbor_slots(v, false));
    }
    image_.assign(order_.size(), 0);
  }

  unsigned __int128 count() { return assign(0); }

 private:
  std::vector<int> neighbor_slots(int v, bool only_earlier) const {
    std::vector<int> slots;
    for (int u = 0; u < p_.order(); ++u) {
      if (!p_.adjacent(u, v) || slot_of_[u] < 0) continue;
      if (only_earlier && slot_of_[u] >= slot_of_[v]) continue;
      slots.push_back(slot_of_[u]);
    }
    return slots;
  }

  std::uint64_t common(const std::vector<int>& slots) const {
    std::uint64_t c = all_;
    for (int s : slots) c &= adj_[image_[s]];
    return c;
  }

  unsigned __int128 assign(std::size_t depth) {
    if (depth == order_.size()) {
      unsigned __int128 product = 1;
      for (const auto& slots : free_) {
        const int choices = std::popcount(common(slots));
        if (choices == 0) return 0;
        product *= static_cast<unsigned>(choices);
      }
      return product;
    }
    unsigned __int128 total = 0;
    std::uint64_t candidates = common(earlier_[depth]);
    while (candidates != 0) {
      image_[depth] = std::countr_zero(candidates);
      candidates &= candidates - 1;
      total += assign(depth + 1);
    }
    return total;
  }

  const PatternGraph& p_;
  int n_;
  Words adj_;
  std::uint64_t all_ = 0;
  std::vector<int> order_;
  std::vector<int> slot_of_;
  std::vector<std::vector<int>> earlier_;
  std::vector<std::vector<int>> free_;
  std::vector<int> image_;
};

unsigned __int128 count_injective(const std::vector<int>& order,
                                  const std::vector<std::vector<int>>& earlier,
                                  const Words& adj, std::uint64_t all,
                                  std::vector<int>& image, std::uint64_t used,
                                  std::size_t depth) {
  std::uint64_t candidates = all & ~used;
  for (int slot : earlier[depth]) candidates &= adj[image[slot]];
  if (depth + 1 == order.size()) return static_cast<unsigned>(std::popcount(candidates));
  unsigned __int128 total = 0;
  while (candidates != 0) {
    const int x = std::countr_zero(candidates);
    candidates &= candidates - 1;
    image[depth] = x;
    total += count_injective(order, earlier, adj, all, image,
                             used | (std::uint64_t{1} << x), depth + 1);
  }
  return total;
}

int greedy_clique_size(const Words& adj, int n) {
  int best = n > 0 ? 1 : 0;
  for (int start = 0; start < n; ++start) {
    std::uint64_t cand = adj[start];
    int size = 1;
    while (cand != 0) {
      int pick = -1;
      int pick_deg = -1;
      for (std::uint64_t c = cand; c != 0; c &= c - 1) {
        const int v = std::countr_zero(c);
        const int d = std::popcount(adj[v] & cand);
        if (d > pick_deg) {
          pick = v;
          pick_deg = d;
        }
      }
      ++size;
      cand &= adj[pick];
    }
    best = std::max(best, size);
  }
  return best;
}

class Colorer {
 public:
  Colorer(const Words& adj, int n) : adj_(adj), n_(n), color_(n, -1) {}

  /// DSATUR greedy colouring; returns the number of colours used.
  int greedy() {
    std::fill(color_.begin(), color_.end(), -1);
    int used = 0;
    for (int step = 0; step < n_; ++step) {
      const int v = next_vertex();
      const std::uint64_t blocked = neighbor_colors(v);
      int c = 0;
      while ((blocked >> c) & 1U) ++c;
      color_[v] = c;
      used = std::max(used, c + 1);
    }
    return used;
  }

  bool colorable(int colors) {
    std::fill(color_.begin(), color_.end(), -1);
    return extend(0, 0, colors);
  }

 private:
  std::uint64_t neighbor_colors(int v) const {
    std::uint64_t seen = 0;
    for (std::uint64_t c = adj_[v]; c != 0; c &= c - 1) {
      const int u = std::countr_zero(c);
      if (color_[u] >= 0) seen |= std::uint64_t{1} << color_[u];
    }
    return seen;
  }

  int next_vertex() const {
    int pick = -1;
    int best_sat = -1;
    int best_deg = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      const int sat = std::popcount(neighbor_colors(v));
      int deg = 0;
      for (std::uint64_t c = adj_[v]; c != 0; c &= c - 1) {
        if (color_[std::countr_zero(c)] < 0) ++deg;
      }
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return pick;
  }

  bool extend(int colored, int used, int colors) {
    if (colored == n_) return true;
    const int v = next_vertex();
    const std::uint64_t blocked = neighbor_colors(v);
    // A fresh colour is only ever the next unused index.
    const int limit = std::min(used + 1, colors);
    for (int c = 0; c < limit; ++c) {
      if ((blocked >> c) & 1U) continue;
      color_[v] = c;
      if (extend(colored + 1, std::max(used, c + 1), colors)) return true;
    }
    color_[v] = -1;
    return false;
  }

  const Words& adj_;
  int n_;
  std::vector<int> color_;
};

}  // namespace

// ---------------------------------------------------------------------------

PatternGraph::PatternGraph(int order, const std::vector<Edge>& edges)
    : order_(order), adjacency_(static_cast<std::size_t>(std::max(order, 0)), 0) {
  if (order < 0 || order > kMaxPatternOrder) {
    throw CapacityError("pattern order must lie in [0, 12], got " + std::to_string(order));
  }
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order || v >= order) {
      throw std::invalid_argument("pattern edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("pattern self-loop");
    const auto a = std::min(u, v);
    const auto b = std::max(u, v);
    if ((adjacency_[a] >> b) & 1U) continue;
    adjacency_[a] |= static_cast<std::uint16_t>(1U << b);
    adjacency_[b] |= static_cast<std::uint16_t>(1U << a);
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
}

Graph disjointness_graph(const SetFamily& family) {
  if (family.size() > static_cast<std::size_t>(kMaxDisjointnessOrder)) {
    throw CapacityError("family too large for a disjointness graph (max 4096 members)");
  }
  const auto& m = family.members();
  Graph g(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if ((m[i] & m[j]) == 0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

Graph turan_graph(int s, int n) {
  if (s < 1 || s > n) {
    throw std::invalid_argument("turan_graph needs 1 <= s <= n");
  }
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (u % s != v % s) g.add_edge(u, v);
    }
  }
  return g;
}

std::int64_t turan_edge_count(int s, int n) {
  if (s < 1 || s > n) throw std::invalid_argument("turan_edge_count needs 1 <= s <= n");
  std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  for (int c = 0; c < s; ++c) {
    const std::int64_t size = n / s + (c < n % s ? 1 : 0);
    total -= size * (size - 1) / 2;
  }
  return total;
}

std::vector<BigInt> clique_counts(const Graph& g, int max_r) {
  if (max_r < 0) throw std::invalid_argument("clique size must be nonnegative");
  CliqueTreeCounter counter(g, max_r);
  counter.run();
  return counter.counts();
}

BigInt clique_count(const Graph& g, int r) {
  if (r < 0) throw std::invalid_argument("clique size must be nonnegative");
  if (r > g.order()) return 0;
  return clique_counts(g, r)[r];
}

std::vector<std::vector<int>> list_cliques(const Graph& g, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0) throw std::invalid_argument("clique size must be nonnegative");
  std::vector<int> current;
  collect_cliques(g, r, current, g.all_vertices(), out);
  return out;
}

CliqueDensity clique_density(const Graph& g, int r) {
  if (r < 0) throw std::invalid_argument("clique size must be nonnegative");
  if (g.order() < r) return {Rational(0), false};
  return {Rational(clique_count(g, r), binomial(g.order(), r)), true};
}

BigInt hom_count(const PatternGraph& p, const Graph& g) {
  check_hom_capacity(p, g);
  if (p.order() == 0) return 1;
  HomCounter counter(p, g);
  return to_big(counter.count());
}

BigInt injective_hom_count(const PatternGraph& p, const Graph& g) {
  check_hom_capacity(p, g);
  const int f = p.order();
  if (f == 0) return 1;
  if (f > g.order()) return 0;
  // Breadth-first pattern order keeps candidate sets constrained early.
  std::vector<int> order;
  std::vector<bool> taken(f, false);
  while (static_cast<int>(order.size()) < f) {
    int pick = -1;
    int links = -1;
    for (int v = 0; v < f; ++v) {
      if (taken[v]) continue;
      int l = 0;
      for (int u : order) l += p.adjacent(u, v) ? 1 : 0;
      if (l > links) {
        pick = v;
        links = l;
      }
    }
    taken[pick] = true;
    order.push_back(pick);
  }
  std::vector<std::vector<int>> earlier(f);
  for (int i = 0; i < f; ++i) {
    for (int j = 0; j < i; ++j) {
      if (p.adjacent(order[i], order[j])) earlier[i].push_back(j);
    }
  }
  const auto adj = g.adjacency_words();
  const int n = g.order();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<int> image(f, 0);
  return to_big(count_injective(order, earlier, adj, all, image, 0, 0));
}

Rational hom_density(const PatternGraph& p, const Graph& g) {
  if (g.order() == 0 && p.order() > 0) {
    throw std::invalid_argument("homomorphism density into the empty graph is undefined");
  }
  return Rational(hom_count(p, g), big_pow(BigInt(g.order()), p.order()));
}

Rational injective_density(const PatternGraph& p, const Graph& g) {
  if (g.order() < p.order()) {
    throw std::invalid_argument("injective density needs order(G) >= order(F)");
  }
  return Rational(injective_hom_count(p, g), falling_factorial(g.order(), p.order()));
}

PatternGraph blow_up(const PatternGraph& p, const BlowupSpec& spec) {
  if (static_cast<int>(spec.t.size()) != p.order()) {
    throw std::invalid_argument("blow-up needs one class size per pattern vertex");
  }
  std::vector<int> offset(p.order() + 1, 0);
  for (int i = 0; i < p.order(); ++i) {
    if (spec.t[i] < 1) throw std::invalid_argument("blow-up class sizes must be >= 1");
    offset[i + 1] = offset[i] + spec.t[i];
    if (offset[i + 1] > kMaxPatternOrder) {
      throw CapacityError("blow-up exceeds 12 vertices");
    }
  }
  std::vector<Edge> edges;
  for (auto [u, v] : p.edges()) {
    for (int a = offset[u]; a < offset[u + 1]; ++a) {
      for (int b = offset[v]; b < offset[v + 1]; ++b) edges.emplace_back(a, b);
    }
  }
  return {offset[p.order()], edges};
}

PatternGraph cycle(int l) {
  if (l < 3) throw std::invalid_argument("cycle length must be at least 3");
  std::vector<Edge> edges;
  for (int i = 0; i < l; ++i) edges.emplace_back(i, (i + 1) % l);
  return {l, edges};
}

PatternGraph complete(int r) {
  if (r < 1) throw std::invalid_argument("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (int u = 0; u < r; ++u) {
    for (int v = u + 1; v < r; ++v) edges.emplace_back(u, v);
  }
  return {r, edges};
}

int chromatic_number(const Graph& g) {
  if (g.order() > kMaxChromaticOrder) {
    throw CapacityError("chromatic number supports order <= 30");
  }
  const int n = g.order();
  if (n == 0) return 0;
  if (g.edge_count() == 0) return 1;
  const auto adj = g.adjacency_words();
  Colorer colorer(adj, n);
  const int upper = colorer.greedy();
  for (int c = greedy_clique_size(adj, n); c < upper; ++c) {
    if (colorer.colorable(c)) return c;
  }
  return upper;
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  std::vector<int> queue;
  for (int s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      const auto& row = g.neighbors(u);
      for (auto v = row.find_first(); v != VertexSet::npos; v = row.find_next(v)) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          queue.push_back(static_cast<int>(v));
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace genset
