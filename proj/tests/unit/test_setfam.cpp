#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "genset/errors.hpp"
#include "genset/setfam.hpp"

using namespace genset;

namespace {

Mask set_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= Mask{1} << (e - 1);
  return m;
}

SetFamily random_family(std::mt19937_64& rng, int n, int max_size) {
  std::uniform_int_distribution<Mask> pick(0, full_mask(n));
  std::uniform_int_distribution<int> size(0, max_size);
  std::vector<Mask> members;
  for (int i = size(rng); i > 0; --i) members.push_back(pick(rng));
  return {n, members};
}

}  // namespace

TEST_CASE("subset masks") {
  const std::vector<int> elems{1, 3, 4};
  const auto s = SubsetMask::from_elements(elems, 5);
  CHECK(s.bits() == 0b01101);
  CHECK(s.cardinality() == 3);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(s.elements() == elems);
  CHECK_THROWS(SubsetMask(0b100000, 5));
  CHECK_THROWS(SubsetMask(0, 31));
}

TEST_CASE("families are sorted and deduplicated") {
  SetFamily f(3, {set_of({2, 3}), set_of({1}), set_of({1}), 0});
  CHECK(f.members() == std::vector<Mask>{0, set_of({1}), set_of({2, 3})});
  CHECK(f == SetFamily(3, {set_of({1}), 0, set_of({2, 3})}));
  CHECK(f.with_member(set_of({3})).size() == 4);
  CHECK(f.without_member(0).size() == 2);
  CHECK_THROWS(SetFamily(2, {set_of({3})}));
}

TEST_CASE("balanced partitions") {
  CHECK(balanced_partition(4, 2).blocks() == std::vector<Mask>{set_of({1, 2}), set_of({3, 4})});
  CHECK(balanced_partition(7, 2).blocks() ==
        std::vector<Mask>{set_of({1, 2, 3, 4}), set_of({5, 6, 7})});
  const auto fives = balanced_partition(5, 5);
  CHECK(fives.blocks().size() == 5);
  for (Mask b : fives.blocks()) CHECK(std::popcount(b) == 1);
  CHECK_THROWS_AS(balanced_partition(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(balanced_partition(31, 2), std::invalid_argument);
  CHECK_THROWS(GroundPartition(3, {set_of({1, 2}), set_of({2, 3})}));
  CHECK_THROWS(GroundPartition(3, {set_of({1, 2})}));
  CHECK_THROWS(GroundPartition(3, {set_of({1, 2, 3}), 0}));
}

TEST_CASE("canonical generators") {
  const auto f42 = canonical_generator(GroundPartition(4, {set_of({1, 2}), set_of({3, 4})}));
  CHECK(f42 == SetFamily(4, {set_of({1}), set_of({2}), set_of({1, 2}), set_of({3}),
                             set_of({4}), set_of({3, 4})}));
  const auto singles =
      canonical_generator(GroundPartition(3, {set_of({1}), set_of({2}), set_of({3})}));
  CHECK(singles == SetFamily(3, {set_of({1}), set_of({2}), set_of({3})}));
  CHECK(canonical_generator(balanced_partition(6, 2)).size() == 14);
  CHECK(canonical_size(6, 2) == 14);
  CHECK(canonical_size(7, 2) == 22);
  CHECK(canonical_size(5, 5) == 5);
  CHECK_THROWS_AS(canonical_size(3, 4), std::invalid_argument);
}

TEST_CASE("size formula and generation for all small (n, k)") {
  for (int n = 1; n <= 20; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto f = canonical_generator(balanced_partition(n, k));
      const int q = n / k;
      const int r = n % k;
      const std::uint64_t formula = (static_cast<std::uint64_t>(k + r) << q) - k;
      CHECK(f.size() == formula);
      CHECK(canonical_size(n, k) == formula);
      if (k <= 4 && n <= 16) CHECK(is_k_generator(f, k));
    }
  }
}

TEST_CASE("coverage examples") {
  const auto c = enumerate_k_unions(SetFamily(2, {set_of({1}), set_of({2})}), 2);
  CHECK(c.covered_count() == 4);
  CHECK(c.all_covered());
  const auto full = enumerate_k_unions(canonical_generator(balanced_partition(6, 2)), 2);
  CHECK(full.covered_count() == 64);
  const SetFamily singles3(3, {set_of({1}), set_of({2}), set_of({3})});
  const auto part = enumerate_k_unions(singles3, 2);
  CHECK_FALSE(part.covered(set_of({1, 2, 3})));
  CHECK(part.covered(0));
  CHECK(part.first_uncovered() == set_of({1, 2, 3}));
  CHECK_THROWS_AS(enumerate_k_unions(SetFamily(25), 1), CapacityError);
}

TEST_CASE("generator and base examples") {
  CHECK(is_k_generator(canonical_generator(balanced_partition(4, 2)), 2));
  std::vector<Mask> all3;
  for (Mask x = 1; x < 8; ++x) all3.push_back(x);
  CHECK(is_k_generator(SetFamily(3, all3), 1));
  CHECK_FALSE(is_k_generator(SetFamily(3, {set_of({1}), set_of({2}), set_of({3})}), 2));

  CHECK(is_k_base(canonical_generator(balanced_partition(4, 2)), 2));
  const SetFamily overlap(3, {set_of({1, 2}), set_of({2, 3})});
  CHECK(enumerate_k_overlapping_unions(overlap, 2).covered(set_of({1, 2, 3})));
  CHECK_FALSE(enumerate_k_unions(overlap, 2).covered(set_of({1, 2, 3})));
  CHECK_FALSE(is_k_base(overlap, 2));
  CHECK(is_k_base(SetFamily(3, all3), 1));
}

TEST_CASE("coverage agrees with a recursive oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto f = random_family(rng, n, 8);
    const auto gen = enumerate_k_unions(f, k);
    const auto base = enumerate_k_overlapping_unions(f, k);
    for (Mask x = 0; x <= full_mask(n); ++x) {
      CHECK(gen.covered(x) == oracle::expressible(f.members(), x, k, true));
      CHECK(base.covered(x) == oracle::expressible(f.members(), x, k, false));
    }
  }
}

TEST_CASE("family properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % n);
    auto f = random_family(rng, n, 20);
    if (is_k_generator(f, k)) {
      CHECK(is_k_base(f, k));
      CHECK(f.size() >= counting_lower_bound(n, k));
    }
    const Mask s = static_cast<Mask>(rng()) & full_mask(n);
    const auto before = enumerate_k_unions(f, k);
    const auto after = enumerate_k_unions(f.with_member(s), k);
    for (Mask x = 0; x <= full_mask(n); ++x) {
      if (before.covered(x)) CHECK(after.covered(x));
    }
    const int i = 1 + static_cast<int>(rng() % n);
    CHECK(section(f, i, SectionSide::kLower).size() + section(f, i, SectionSide::kUpper).size() ==
          f.size());
  }
}

TEST_CASE("counting lower bound") {
  CHECK(counting_lower_bound(4, 2) == 5);
  CHECK(counting_lower_bound(1, 1) == 1);
  CHECK(counting_lower_bound(10, 2) == 45);
  for (int n = 1; n <= 30; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto m = counting_lower_bound(n, k);
      auto reach = [&](std::uint64_t mm) {
        BigInt sum = 0;
        for (int i = 0; i <= k; ++i) sum += binomial(static_cast<std::int64_t>(mm), i);
        return sum;
      };
      const BigInt target = BigInt(1) << n;
      CHECK(reach(m) >= target);
      if (m > 0) CHECK(reach(m - 1) < target);
    }
  }
}

TEST_CASE("crude upper bound") {
  CHECK(std::abs(crude_bound_constant() - 1.061) < 5e-4);
  CHECK(crude_upper_bound(6, 2) == doctest::Approx(16.97).epsilon(1e-3));
  CHECK(crude_upper_bound(5, 5) == doctest::Approx(10.61).epsilon(1e-3));
  for (int n = 1; n <= 30; ++n)
    for (int k = 1; k <= n; ++k) CHECK(static_cast<double>(canonical_size(n, k)) <= crude_upper_bound(n, k));
}

TEST_CASE("sections") {
  const SetFamily f(2, {set_of({1}), set_of({1, 2}), set_of({2})});
  CHECK(section(f, 1, SectionSide::kLower) == SetFamily(2, {set_of({2})}));
  CHECK(section(f, 1, SectionSide::kUpper) == SetFamily(2, {0, set_of({2})}));
  CHECK(section(SetFamily(3), 2, SectionSide::kUpper).empty());
  CHECK_THROWS_AS(section(f, 3, SectionSide::kLower), std::invalid_argument);
}

TEST_CASE("permutations") {
  const std::vector<int> perm{3, 1, 2};
  CHECK(permute_mask(set_of({1, 2}), perm) == set_of({3, 1}));
  const auto f = canonical_generator(balanced_partition(3, 2));
  CHECK(is_k_generator(permute_family(f, perm), 2));
  const std::vector<int> bad{1, 1, 2};
  CHECK_THROWS(permute_family(f, bad));
}

TEST_CASE("family text format") {
  const std::string text = "# comment\nn=4\n1,2\n\n-\n3\n";
  const auto f = parse_family(text);
  CHECK(f == SetFamily(4, {0, set_of({1, 2}), set_of({3})}));
  CHECK(format_family(f) == "n=4\n-\n1,2\n3\n");
  CHECK(parse_family(format_family(f)) == f);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_family(rng, 1 + static_cast<int>(rng() % 10), 12);
    CHECK(parse_family(format_family(g)) == g);
  }

  auto line_of = [](const std::string& bad) -> std::size_t {
    try {
      parse_family(bad);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("n=3\n1,2\n2,1\n") == 3);
  CHECK(line_of("n=3\n4\n") == 2);
  CHECK(line_of("1,2\n") == 1);
  CHECK(line_of("n=3\n1,,2\n") == 2);
  CHECK(line_of("n=3\nx\n") == 2);
  CHECK(line_of("") == 1);
}
