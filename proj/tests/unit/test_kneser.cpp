#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "genset/errors.hpp"
#include "genset/kneser.hpp"

using namespace genset;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

PatternGraph random_pattern(std::mt19937_64& rng, int f) {
  std::vector<Edge> edges;
  for (int u = 0; u < f; ++u)
    for (int v = u + 1; v < f; ++v)
      if (rng() & 1U) edges.emplace_back(u, v);
  return {f, edges};
}

SetFamily two_subsets(int n) {
  std::vector<Mask> members;
  for (Mask x = 0; x <= full_mask(n); ++x)
    if (std::popcount(x) == 2) members.push_back(x);
  return {n, members};
}

Graph petersen() { return disjointness_graph(two_subsets(5)); }

}  // namespace

TEST_CASE("graph basics") {
  Graph g(4, {{0, 1}, {1, 2}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_THROWS(g.add_edge(2, 2));
  CHECK_THROWS(g.add_edge(0, 4));
  g.remove_edge(0, 1);
  CHECK(g.edges() == std::vector<Edge>{{1, 2}});
  const auto h = g.induced({1, 2});
  CHECK(h.order() == 2);
  CHECK(h.has_edge(0, 1));
}

TEST_CASE("graph text format") {
  const Graph g(3, {{0, 2}, {1, 2}});
  CHECK(format_graph(g) == "graph n=3 m=2\n1 3\n2 3\n");
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK_THROWS_AS(parse_graph("graph n=3 m=2\n1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph n=3 m=1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph n=3 m=2\n1 3\n3 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph n=3 m=1\n1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n=3\n"), ParseError);
}

TEST_CASE("disjointness graphs") {
  const auto g = disjointness_graph(SetFamily(2, {0b01, 0b10, 0b11}));
  CHECK(g.edges() == std::vector<Edge>{{0, 1}});
  const auto h = disjointness_graph(SetFamily(2, {0b00, 0b01, 0b10, 0b11}));
  CHECK(h.degree(0) == 3);
  const auto kneser = disjointness_graph(two_subsets(6));
  CHECK(kneser.order() == 15);
  CHECK(kneser.edge_count() == 45);

  // Power sets of two disjoint blocks: every cross pair is adjacent.
  std::vector<Mask> members;
  for (Mask x = 1; x < 8; ++x) members.push_back(x);
  for (Mask x = 1; x < 8; ++x) members.push_back(x << 3);
  const SetFamily split(6, members);
  const auto s = disjointness_graph(split);
  for (std::size_t i = 0; i < split.size(); ++i)
    for (std::size_t j = 0; j < split.size(); ++j)
      if ((split.members()[i] & 7U) == split.members()[i] && (split.members()[j] >> 3) != 0 &&
          (split.members()[j] & 7U) == 0)
        CHECK(s.has_edge(static_cast<int>(i), static_cast<int>(j)));
}

TEST_CASE("turan graphs") {
  CHECK(turan_graph(2, 4).edge_count() == 4);
  CHECK(turan_graph(2, 5).edge_count() == 6);
  CHECK(turan_graph(3, 6).edge_count() == 12);
  for (int s = 1; s <= 5; ++s)
    for (int n = s; n <= 12; ++n) CHECK(turan_graph(s, n).edge_count() == turan_edge_count(s, n));
  CHECK_THROWS_AS(turan_graph(4, 3), std::invalid_argument);
}

TEST_CASE("clique counts") {
  CHECK(clique_count(turan_graph(3, 6), 3) == 8);
  CHECK(clique_count(turan_graph(2, 4), 2) == 4);
  CHECK(clique_count(disjointness_graph(two_subsets(6)), 3) == 15);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_graph(rng, 1 + static_cast<int>(rng() % 14), 0.6);
    CHECK(clique_count(g, 0) == 1);
    CHECK(clique_count(g, 1) == g.order());
    CHECK(clique_count(g, 2) == g.edge_count());
    for (int r = 3; r <= 6; ++r) CHECK(clique_count(g, r) == oracle::cliques(g, r));
    const auto listed = list_cliques(g, 3);
    CHECK(listed.size() == oracle::cliques(g, 3));
    CHECK(std::is_sorted(listed.begin(), listed.end()));
  }
  // A larger graph with many words of adjacency.
  const auto big = turan_graph(4, 70);
  CHECK(clique_count(big, 4) == oracle::multipartite_cliques(oracle::turan_sizes(4, 70), 4));
}

TEST_CASE("clique densities") {
  Graph k5(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  CHECK(clique_density(k5, 3).value == 1);
  CHECK(clique_density(Graph(6), 2).value == 0);
  CHECK(clique_density(turan_graph(3, 6), 3).value == Rational(2, 5));
  const auto undefined = clique_density(Graph(2), 3);
  CHECK_FALSE(undefined.defined);
  CHECK(undefined.value == 0);
}

TEST_CASE("homomorphism counts") {
  const auto k3 = complete(3).to_graph();
  CHECK(hom_count(complete(2), k3) == 6);
  CHECK(hom_count(cycle(3), cycle(4).to_graph()) == 0);
  CHECK(hom_count(complete(1), turan_graph(2, 7)) == 7);
  CHECK(injective_hom_count(complete(2), k3) == 6);
  CHECK(injective_hom_count(complete(3), k3) == 6);
  CHECK(injective_hom_count(PatternGraph(3, {{0, 1}, {1, 2}}), k3) == 6);
  CHECK(hom_density(complete(2), k3) == Rational(2, 3));
  CHECK(injective_density(complete(2), k3) == 1);
  CHECK(injective_density(complete(3), turan_graph(3, 6)) == Rational(8, 20));
  CHECK_THROWS_AS(injective_density(complete(4), k3), std::invalid_argument);
  CHECK_THROWS_AS(hom_density(complete(2), Graph(0)), std::invalid_argument);
}

TEST_CASE("homomorphisms agree with brute force") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 80; ++trial) {
    const auto p = random_pattern(rng, 1 + static_cast<int>(rng() % 5));
    const auto g = random_graph(rng, 1 + static_cast<int>(rng() % 6), 0.5);
    const auto h = hom_count(p, g);
    const auto inj = injective_hom_count(p, g);
    CHECK(h == oracle::homs(p.order(), p.edges(), g, false));
    CHECK(inj == oracle::homs(p.order(), p.edges(), g, true));
    // Non-injective maps are at most C(f,2) n^{f-1}.
    CHECK(inj <= h);
    CHECK(h - inj <= binomial(p.order(), 2) * big_pow(g.order(), p.order() - 1));
  }
}

TEST_CASE("blow-ups") {
  const auto c5 = blow_up(cycle(5), {{1, 1, 1, 1, 2}});
  CHECK(c5.order() == 6);
  CHECK(c5.edges().size() == 7);
  const auto k22 = blow_up(complete(2), {{2, 2}});
  CHECK(k22.to_graph().edge_count() == 4);
  CHECK_FALSE(k22.adjacent(0, 1));
  CHECK(k22.adjacent(0, 2));
  CHECK(blow_up(cycle(4), {{1, 1, 1, 1}}) == cycle(4));
  CHECK_THROWS(blow_up(complete(2), {{7, 6}}));
  CHECK_THROWS(blow_up(complete(2), {{0, 1}}));
  CHECK_THROWS(blow_up(complete(2), {{1}}));
}

TEST_CASE("standard patterns") {
  CHECK(cycle(3) == complete(3));
  CHECK(cycle(4).edges().size() == 4);
  CHECK(complete(1).order() == 1);
  CHECK(complete(1).edges().empty());
  CHECK_THROWS_AS(cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(complete(0), std::invalid_argument);
}

TEST_CASE("blow-up densities dominate powers of the base density") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_pattern(rng, 1 + static_cast<int>(rng() % 3));
    const auto g = random_graph(rng, 2 + static_cast<int>(rng() % 5), 0.6);
    BlowupSpec spec;
    int product = 1;
    for (int i = 0; i < p.order(); ++i) {
      const int t = 1 + static_cast<int>(rng() % 2);
      spec.t.push_back(t);
      product *= t;
    }
    CHECK(hom_density(blow_up(p, spec), g) >= rational_pow(hom_density(p, g), product));
  }
}

TEST_CASE("chromatic numbers") {
  CHECK(chromatic_number(cycle(5).to_graph()) == 3);
  CHECK(chromatic_number(disjointness_graph(two_subsets(6))) == 4);
  CHECK(chromatic_number(turan_graph(3, 6)) == 3);
  CHECK(chromatic_number(petersen()) == 3);
  CHECK(chromatic_number(Graph(0)) == 0);
  CHECK(chromatic_number(Graph(3)) == 1);
  CHECK(is_bipartite(cycle(6).to_graph()));
  CHECK_FALSE(is_bipartite(cycle(7).to_graph()));
  CHECK_THROWS_AS(chromatic_number(Graph(31)), CapacityError);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.5);
    const int chi = chromatic_number(g);
    CHECK(oracle::kpartization(g, chi) == 0);
    if (chi > 1) CHECK(oracle::kpartization(g, chi - 1) > 0);
  }
}
