#pragma once

// Brute-force reference implementations. These deliberately share no code
// with the library beyond the Graph / SetFamily containers and are only
// usable at tiny sizes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "genset/graph.hpp"
#include "genset/rational.hpp"
#include "genset/setfam.hpp"

namespace oracle {

using genset::BigInt;
using genset::Graph;
using genset::Mask;
using genset::Rational;
using genset::SetFamily;

// Calls fn(subset) for every r-subset of {0..n-1}, as an increasing list.
inline void for_each_combination(int n, int r, const std::function<void(const std::vector<int>&)>& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool is_clique(const Graph& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.has_edge(s[i], s[j])) return false;
  return true;
}

inline std::uint64_t cliques(const Graph& g, int r) {
  std::uint64_t count = 0;
  for_each_combination(g.order(), r, [&](const std::vector<int>& s) { count += is_clique(g, s); });
  return count;
}

// Maps V(p) -> V(g) given as an explicit edge list for the pattern.
inline std::uint64_t homs(int p_order, const std::vector<std::pair<int, int>>& p_edges,
                          const Graph& g, bool injective) {
  const int n = g.order();
  std::vector<int> map(p_order, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (auto [u, v] : p_edges) {
      if (!g.has_edge(map[u], map[v])) {
        ok = false;
        break;
      }
    }
    if (ok && injective) {
      std::set<int> image(map.begin(), map.end());
      ok = static_cast<int>(image.size()) == p_order;
    }
    count += ok;
    int i = 0;
    while (i < p_order && ++map[i] == n) map[i++] = 0;
    if (i == p_order) return count;
  }
}

// Is x a union of at most k members of f (disjoint if `disjoint`)?
inline bool expressible(const std::vector<Mask>& f, Mask x, int k, bool disjoint) {
  if (x == 0) return true;
  if (k == 0) return false;
  for (Mask m : f) {
    if (m == 0 || (m & ~x) != 0) continue;
    if (disjoint) {
      if (expressible(f, x & ~m, k - 1, true)) return true;
    } else {
      // Overlapping union: the rest must cover x \ m using subsets of x.
      const Mask rest = x & ~m;
      if (rest == 0) return true;
      for (Mask sub = m;; sub = (sub - 1) & m) {
        if (expressible(f, rest | sub, k - 1, false)) return true;
        if (sub == 0) break;
      }
    }
  }
  return false;
}

inline bool generates(const std::vector<Mask>& f, int n, int k, bool disjoint) {
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    if (!expressible(f, x, k, disjoint)) return false;
  return true;
}

// Smallest family (members drawn from all subsets of [n], the empty set
// included) that is a k-generator / k-base, by trying sizes 0, 1, 2, ...
inline int naive_min_size(int n, int k, bool disjoint) {
  const int universe = 1 << n;
  for (int m = 0; m <= universe; ++m) {
    bool found = false;
    for_each_combination(universe, m, [&](const std::vector<int>& pick) {
      if (found) return;
      std::vector<Mask> f(pick.begin(), pick.end());
      if (generates(f, n, k, disjoint)) found = true;
    });
    if (found) return m;
  }
  return -1;
}

// Minimum number of monochromatic edges over all k^n colourings.
inline std::int64_t kpartization(const Graph& g, int k) {
  const int n = g.order();
  const auto edges = g.edges();
  std::vector<int> colour(n, 0);
  std::int64_t best = static_cast<std::int64_t>(edges.size());
  while (true) {
    std::int64_t bad = 0;
    for (auto [u, v] : edges) bad += colour[u] == colour[v];
    best = std::min(best, bad);
    int i = 0;
    while (i < n && ++colour[i] == k) colour[i++] = 0;
    if (i == n) return best;
  }
}

inline std::int64_t max_cut(const Graph& g) {
  const int n = g.order();
  const auto edges = g.edges();
  std::int64_t best = 0;
  for (std::uint64_t side = 0; side < (std::uint64_t{1} << n); ++side) {
    std::int64_t cut = 0;
    for (auto [u, v] : edges) cut += ((side >> u) & 1U) != ((side >> v) & 1U);
    best = std::max(best, cut);
  }
  return best;
}

inline bool bipartite(const Graph& g) {
  const int n = g.order();
  const auto edges = g.edges();
  for (std::uint64_t side = 0; side < (std::uint64_t{1} << n); ++side) {
    bool ok = true;
    for (auto [u, v] : edges) {
      if (((side >> u) & 1U) == ((side >> v) & 1U)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return n == 0;
}

// Exact h_{P ⊗ t}(H[f]) for a pattern P on `classes` vertices given by its
// edge list, by enumerating every |f|^{classes·t} tuple. Two drawn sets are
// adjacent in H iff they are disjoint and distinct (∅ carries no loop).
inline Rational class_union_probability(const SetFamily& f, int classes, int t,
                                        const std::vector<std::pair<int, int>>& adjacent) {
  const auto& members = f.members();
  const int slots = classes * t;
  const std::size_t m = members.size();
  std::vector<std::size_t> pick(slots, 0);
  BigInt good = 0;
  BigInt total = 0;
  while (true) {
    bool ok = true;
    for (auto [a, b] : adjacent) {
      for (int i = 0; i < t && ok; ++i) {
        for (int j = 0; j < t && ok; ++j) {
          const Mask x = members[pick[a * t + i]];
          const Mask y = members[pick[b * t + j]];
          if ((x & y) != 0 || x == y) ok = false;
        }
      }
      if (!ok) break;
    }
    good += ok;
    total += 1;
    int i = 0;
    while (i < slots && ++pick[i] == m) pick[i++] = 0;
    if (i == slots) break;
  }
  return Rational(good, total);
}

inline Rational union_tail(const SetFamily& f, int t, const Rational& theta) {
  const auto& members = f.members();
  const std::size_t m = members.size();
  std::vector<std::size_t> pick(t, 0);
  BigInt good = 0;
  BigInt total = 0;
  while (true) {
    Mask u = 0;
    for (auto p : pick) u |= members[p];
    good += Rational(std::popcount(u)) <= theta * f.ground_n();
    total += 1;
    int i = 0;
    while (i < t && ++pick[i] == m) pick[i++] = 0;
    if (i == t) break;
  }
  return Rational(good, total);
}

inline Rational odd_subset_probability(const SetFamily& f, int s) {
  const auto& members = f.members();
  BigInt bad = 0;
  BigInt total = 0;
  for_each_combination(static_cast<int>(members.size()), 2 * s + 1, [&](const std::vector<int>& pick) {
    Graph h(2 * s + 1);
    for (int i = 0; i < 2 * s + 1; ++i)
      for (int j = i + 1; j < 2 * s + 1; ++j)
        if ((members[pick[i]] & members[pick[j]]) == 0) h.add_edge(i, j);
    bad += !bipartite(h);
    total += 1;
  });
  return Rational(bad, total);
}

// Elementary symmetric polynomial e_r of the class sizes: cliques of a
// complete multipartite graph.
inline BigInt multipartite_cliques(const std::vector<int>& sizes, int r) {
  std::vector<BigInt> e(r + 1, 0);
  e[0] = 1;
  for (int s : sizes)
    for (int j = r; j >= 1; --j) e[j] += e[j - 1] * s;
  return e[r];
}

inline std::vector<int> turan_sizes(int k, int n) {
  std::vector<int> sizes(k, n / k);
  for (int i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

}  // namespace oracle
