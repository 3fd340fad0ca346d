#include "genset/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "genset/errors.hpp"
#include "genset/kneser.hpp"
#include "genset/stability.hpp"

namespace genset {

namespace {

using Clock = std::chrono::steady_clock;

bool test_bit(const std::uint64_t* words, Mask x) { return (words[x >> 6] >> (x & 63)) & 1U; }
void set_bit(std::uint64_t* words, Mask x) { words[x >> 6] |= std::uint64_t{1} << (x & 63); }
void clear_bit(std::uint64_t* words, Mask x) {
  words[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

// Depth-first branch and bound over families of nonempty subsets of [n].
// A node always branches on the first uncovered target (by size, then value);
// each child adds one subset of that target, and later siblings forbid the
// subsets tried by earlier ones, so every family is reached along one path.
class GeneratorSearch {
 public:
  GeneratorSearch(int n, int k, SearchMode mode, const SearchBudget& budget,
                  Clock::time_point start)
      : n_(n),
        k_(k),
        mode_(mode),
        table_(std::size_t{1} << n),
        words_(std::max<std::size_t>(1, table_ / 64)),
        budget_(budget),
        start_(start) {
    for (Mask x = 1; x < table_; ++x) targets_.push_back(x);
    std::stable_sort(targets_.begin(), targets_.end(),
                     [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    in_family_.assign(words_, 0);
  }

  /// Looks for a family smaller than `incumbent`.
  void minimize(const SetFamily& incumbent, bool symmetry) {
    enumerate_ = false;
    symmetry_ = symmetry;
    best_size_ = incumbent.size();
    best_family_ = incumbent.members();
    run(best_size_);
  }

  /// Collects every family of size `target` (which must be the optimum).
  void enumerate(std::uint64_t target, std::size_t cap) {
    enumerate_ = true;
    symmetry_ = false;
    cap_ = cap;
    best_size_ = target;
    run(target);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t best_size() const { return best_size_; }
  SetFamily best_family() const { return {n_, best_family_}; }
  const std::vector<SetFamily>& found() const { return found_; }
  std::uint64_t found_count() const { return found_count_; }

 private:
  void run(std::uint64_t max_depth) {
    const std::size_t depth_slots = static_cast<std::size_t>(max_depth) + 2;
    coverage_.assign(depth_slots * (k_ + 1) * words_, 0);
    forbidden_.assign(depth_slots * words_, 0);
    std::fill(in_family_.begin(), in_family_.end(), 0);
    members_.clear();
    frontier_seen_ = false;
    set_bit(level(0, 0), 0);
    for (int j = 1; j <= k_; ++j) set_bit(level(0, j), 0);
    // Sum_{i<=k} C(a, i), saturating.
    reach_.assign(depth_slots + 1, 0);
    for (std::size_t a = 0; a < reach_.size(); ++a) {
      unsigned __int128 sum = 0;
      unsigned __int128 c = 1;
      for (int i = 0; i <= k_ && i <= static_cast<int>(a); ++i) {
        if (i > 0) c = c * (a - i + 1) / i;
        sum += c;
      }
      reach_[a] = sum > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(sum);
    }
    visit(0);
  }

  std::uint64_t* level(std::size_t depth, int j) {
    return coverage_.data() + (depth * (k_ + 1) + j) * words_;
  }
  std::uint64_t* forbidden(std::size_t depth) { return forbidden_.data() + depth * words_; }

  std::uint64_t max_size() const { return enumerate_ ? best_size_ : best_size_ - 1; }

  bool out_of_budget() {
    if (budget_.node_limit != 0 && nodes_ >= budget_.node_limit) return true;
    if (budget_.seconds > 0 && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double> spent = Clock::now() - start_;
      if (spent.count() >= budget_.seconds) return true;
    }
    return false;
  }

  void add_member(std::size_t depth, Mask y) {
    const Mask complement = static_cast<Mask>(table_ - 1) & ~y;
    std::copy_n(level(depth, 0), (k_ + 1) * words_, level(depth + 1, 0));
    for (int j = 1; j <= k_; ++j) {
      const std::uint64_t* prev = level(depth, j - 1);
      std::uint64_t* next = level(depth + 1, j);
      if (mode_ == SearchMode::kGenerator) {
        for (Mask sub = complement;; sub = (sub - 1) & complement) {
          if (test_bit(prev, sub)) set_bit(next, sub | y);
          if (sub == 0) break;
        }
      } else {
        for (std::size_t w = 0; w < words_; ++w) {
          for (std::uint64_t bits = prev[w]; bits != 0; bits &= bits - 1) {
            const Mask x = static_cast<Mask>(w * 64 + std::countr_zero(bits));
            set_bit(next, x | y);
          }
        }
      }
    }
  }

  bool completes_target(std::size_t depth, Mask target, Mask y) {
    const std::uint64_t* below = level(depth, k_ - 1);
    const Mask rest = target & ~y;
    if (mode_ == SearchMode::kGenerator) return test_bit(below, rest);
    for (Mask sub = y;; sub = (sub - 1) & y) {
      if (test_bit(below, rest | sub)) return true;
      if (sub == 0) break;
    }
    return false;
  }

  void record_solution() {
    const std::uint64_t size = members_.size();
    if (enumerate_) {
      if (size != best_size_) throw std::logic_error("enumeration found a smaller family");
      ++found_count_;
      if (found_.size() < cap_) found_.emplace_back(n_, members_);
      return;
    }
    if (size < best_size_) {
      best_size_ = size;
      best_family_ = members_;
    }
  }

  // Orbit representatives of the candidates under the permutations of [n]
  // that fix the current family, the target and the forbidden set.
  std::vector<std::vector<Mask>> candidate_orbits(std::size_t depth, Mask target,
                                                  const std::vector<Mask>& candidates) {
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> group;
    const std::uint64_t* forb = forbidden(depth);
    do {
      if (permute_mask(target, perm) != target) continue;
      bool fixes = true;
      for (Mask m : members_) {
        if (!test_bit(in_family_.data(), permute_mask(m, perm))) {
          fixes = false;
          break;
        }
      }
      for (Mask x = 1; fixes && x < table_; ++x) {
        if (test_bit(forb, x) && !test_bit(forb, permute_mask(x, perm))) fixes = false;
      }
      if (fixes) group.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<Mask>> orbits;
    std::vector<Mask> assigned;
    for (Mask y : candidates) {
      if (std::find(assigned.begin(), assigned.end(), y) != assigned.end()) continue;
      std::vector<Mask> orbit{y};
      for (const auto& g : group) {
        const Mask image = permute_mask(y, g);
        if (std::find(orbit.begin(), orbit.end(), image) == orbit.end()) orbit.push_back(image);
      }
      assigned.insert(assigned.end(), orbit.begin(), orbit.end());
      orbits.push_back(std::move(orbit));
    }
    return orbits;
  }

  void visit(std::size_t depth) {
    if (aborted_) return;
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    const std::uint64_t* covered = level(depth, k_);
    std::uint64_t covered_count = 0;
    for (std::size_t w = 0; w < words_; ++w) covered_count += std::popcount(covered[w]);
    const std::uint64_t uncovered = table_ - covered_count;
    if (uncovered == 0) {
      record_solution();
      return;
    }
    const std::uint64_t size = members_.size();
    const std::uint64_t limit = max_size();
    if (size >= limit) return;
    // Each uncovered target needs its own sub-collection of <= k members
    // that uses at least one member still to be added.
    if (reach_[limit] - reach_[size] < uncovered) return;

    Mask target = 0;
    for (Mask x : targets_) {
      if (!test_bit(covered, x)) {
        target = x;
        break;
      }
    }
    const bool last_slot = size + 1 == limit;
    const std::uint64_t* forb = forbidden(depth);
    std::vector<Mask> candidates;
    for (Mask y = target; y != 0; y = (y - 1) & target) {
      if (test_bit(in_family_.data(), y) || test_bit(forb, y)) continue;
      if (last_slot && !completes_target(depth, target, y)) continue;
      candidates.push_back(y);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](Mask a, Mask b) {
      return std::popcount(a) > std::popcount(b);
    });

    std::vector<std::vector<Mask>> branches;
    if (symmetry_ && !frontier_seen_ && candidates.size() > 1) {
      frontier_seen_ = true;
      branches = candidate_orbits(depth, target, candidates);
    } else {
      for (Mask y : candidates) branches.push_back({y});
    }

    std::vector<std::uint64_t> siblings(forb, forb + words_);
    for (const auto& branch : branches) {
      const Mask y = branch.front();
      std::copy(siblings.begin(), siblings.end(), forbidden(depth + 1));
      add_member(depth, y);
      members_.push_back(y);
      set_bit(in_family_.data(), y);
      visit(depth + 1);
      clear_bit(in_family_.data(), y);
      members_.pop_back();
      if (aborted_) return;
      for (Mask z : branch) set_bit(siblings.data(), z);
    }
  }

  int n_;
  int k_;
  SearchMode mode_;
  std::size_t table_;
  std::size_t words_;
  SearchBudget budget_;
  Clock::time_point start_;

  std::vector<Mask> targets_;
  std::vector<std::uint64_t> coverage_;
  std::vector<std::uint64_t> forbidden_;
  std::vector<std::uint64_t> in_family_;
  std::vector<std::uint64_t> reach_;
  std::vector<Mask> members_;

  bool enumerate_ = false;
  bool symmetry_ = true;
  bool frontier_seen_ = false;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t best_size_ = 0;
  std::vector<Mask> best_family_;
  std::size_t cap_ = 0;
  std::vector<SetFamily> found_;
  std::uint64_t found_count_ = 0;
};

bool passes(const SetFamily& family, int k, SearchMode mode) {
  return mode == SearchMode::kGenerator ? is_k_generator(family, k) : is_k_base(family, k);
}

}  // namespace

std::string to_string(SearchMode mode) {
  return mode == SearchMode::kGenerator ? "generator" : "base";
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kComplete:
      return "complete";
    case SearchStatus::kCapped:
      return "capped";
    case SearchStatus::kTimeout:
      return "timeout";
  }
  return "unknown";
}

SearchResult min_generator_size(int n, int k, const SearchOptions& options) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("search needs 1 <= k <= n");
  if (n > kMaxSearchGround) {
    throw CapacityError("exact search supports n <= " + std::to_string(kMaxSearchGround));
  }
  const auto start = Clock::now();
  SearchResult result;
  result.n = n;
  result.k = k;
  result.mode = options.mode;
  result.lower_bound = counting_lower_bound(n, k);

  GeneratorSearch search(n, k, options.mode, options.budget, start);
  search.minimize(canonical_generator(balanced_partition(n, k)), options.symmetry_breaking);
  result.nodes = search.nodes();
  result.min_size = search.best_size();
  if (search.aborted()) {
    result.status = SearchStatus::kTimeout;
    result.optima = {search.best_family()};
    result.optima_count = 1;
    return result;
  }
  result.lower_bound = result.min_size;

  if (!options.enumerate_optima) {
    result.optima = {search.best_family()};
    result.optima_count = 1;
  } else {
    GeneratorSearch all(n, k, options.mode, options.budget, start);
    all.enumerate(result.min_size, options.optima_cap);
    result.nodes += all.nodes();
    result.optima = all.found();
    result.optima_count = all.found_count();
    if (all.aborted()) {
      result.status = SearchStatus::kTimeout;
    } else if (all.found_count() > options.optima_cap) {
      result.status = SearchStatus::kCapped;
    } else {
      result.optima_count_exact = true;
    }
  }
  for (const auto& family : result.optima) {
    if (family.size() != result.min_size || !passes(family, k, options.mode)) {
      throw std::logic_error("search reported a family that fails re-verification");
    }
  }
  return result;
}

nlohmann::json to_json(const SearchResult& result) {
  auto optima = nlohmann::json::array();
  for (const auto& f : result.optima) optima.push_back(format_family(f));
  return {{"n", result.n},
          {"k", result.k},
          {"mode", to_string(result.mode)},
          {"min_size", result.min_size},
          {"lower_bound", result.lower_bound},
          {"canonical_size", canonical_size(result.n, result.k)},
          {"status", to_string(result.status)},
          {"nodes", result.nodes},
          {"optima_count", result.optima_count},
          {"optima_count_exact", result.optima_count_exact},
          {"optima", optima}};
}

CanonicityVerdict is_canonical(const SetFamily& family, int k) {
  const int n = family.ground_n();
  if (k < 1 || k > n || family.contains(0)) return {};
  std::vector<Mask> blocks;
  for (Mask m : family.members()) {
    bool maximal = true;
    for (Mask other : family.members()) {
      if (other != m && (m & other) == m) {
        maximal = false;
        break;
      }
    }
    if (maximal) blocks.push_back(m);
  }
  if (static_cast<int>(blocks.size()) != k) return {};
  Mask seen = 0;
  for (Mask b : blocks) {
    if ((b & seen) != 0) return {};
    seen |= b;
  }
  if (seen != full_mask(n)) return {};
  std::sort(blocks.begin(), blocks.end(),
            [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
  GroundPartition partition(n, blocks);
  if (!partition.is_balanced()) return {};
  if (canonical_generator(partition) != family) return {};
  return {true, partition};
}

std::uint64_t balanced_partition_count(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("needs 1 <= k <= n");
  const int q = n / k;
  const int r = n % k;
  BigInt denom = big_pow(factorial(q + 1), r) * big_pow(factorial(q), k - r) * factorial(r) *
                 factorial(k - r);
  return (factorial(n) / denom).convert_to<std::uint64_t>();
}

ConjectureReport verify_conjecture(int n, int k, const SearchBudget& budget) {
  ConjectureReport report;
  report.n = n;
  report.k = k;
  report.canonical_size = canonical_size(n, k);
  report.balanced_partitions = balanced_partition_count(n, k);
  report.uniqueness_checked = n > 2 * k;

  SearchOptions options;
  options.enumerate_optima = report.uniqueness_checked;
  options.budget = budget;
  const auto result = min_generator_size(n, k, options);
  report.nodes = result.nodes;
  report.min_size = result.min_size;
  report.size_matches = result.min_size == report.canonical_size;
  report.inconclusive = result.status != SearchStatus::kComplete;
  if (report.inconclusive) return report;

  if (report.uniqueness_checked) {
    report.optima_count = result.optima_count;
    report.all_optima_canonical = true;
    std::vector<GroundPartition> partitions;
    for (const auto& f : result.optima) {
      const auto verdict = is_canonical(f, k);
      if (!verdict.is_canonical) {
        report.all_optima_canonical = false;
        continue;
      }
      partitions.push_back(*verdict.witness_partition);
    }
    report.partitions_distinct = true;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
      for (std::size_t j = i + 1; j < partitions.size(); ++j) {
        if (partitions[i] == partitions[j]) report.partitions_distinct = false;
      }
    }
    report.confirmed = report.size_matches && report.all_optima_canonical &&
                       report.partitions_distinct &&
                       report.optima_count == report.balanced_partitions;
  } else {
    report.optima_count = result.optima_count;
    report.confirmed = report.size_matches;
  }
  return report;
}

nlohmann::json to_json(const ConjectureReport& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"canonical_size", r.canonical_size},
          {"min_size", r.min_size},
          {"size_matches", r.size_matches},
          {"uniqueness_checked", r.uniqueness_checked},
          {"optima_count", r.optima_count},
          {"balanced_partitions", r.balanced_partitions},
          {"all_optima_canonical", r.all_optima_canonical},
          {"partitions_distinct", r.partitions_distinct},
          {"inconclusive", r.inconclusive},
          {"confirmed", r.confirmed},
          {"nodes", r.nodes}};
}

SetFamily counterexample_family(int n) {
  if (n < 6 || n % 6 != 0) throw std::invalid_argument("counterexample family needs n a multiple of 6");
  if (n > 18) throw CapacityError("counterexample family supports n <= 18");
  const int b = n / 6;
  std::vector<Mask> members;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      const Mask both = (full_mask(b) << (i * b)) | (full_mask(b) << (j * b));
      for (Mask sub = both;; sub = (sub - 1) & both) {
        members.push_back(sub);
        if (sub == 0) break;
      }
    }
  }
  return {n, std::move(members)};
}

KneserBlowupReport verify_kneser_blowup(int n) {
  if (n < 6 || n % 6 != 0) throw std::invalid_argument("blow-up check needs n a multiple of 6");
  if (n > 12) throw CapacityError("blow-up check supports n <= 12");
  KneserBlowupReport report;
  report.n = n;
  const auto family = counterexample_family(n);
  report.family_size = family.size();
  report.nominal_size = 15ULL << (n / 3);
  report.required_class_size = std::uint64_t{1} << (n / 3 - 2);

  const int b = n / 6;
  std::vector<Mask> blocks;
  for (int i = 0; i < 6; ++i) blocks.push_back(full_mask(b) << (i * b));
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<Mask>> classes;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      pairs.emplace_back(i, j);
      std::vector<Mask> cls;
      const Mask both = blocks[i] | blocks[j];
      for (Mask sub = both; sub != 0; sub = (sub - 1) & both) {
        if ((sub & blocks[i]) && (sub & blocks[j])) cls.push_back(sub);
      }
      classes.push_back(std::move(cls));
    }
  }
  report.class_size = classes.front().size();
  report.classes_in_family = true;
  std::vector<Mask> all;
  for (const auto& cls : classes) {
    if (cls.size() < report.required_class_size) report.classes_in_family = false;
    for (Mask x : cls) {
      if (!family.contains(x)) report.classes_in_family = false;
      all.push_back(x);
    }
  }
  std::sort(all.begin(), all.end());
  report.classes_disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();

  report.adjacency_ok = true;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const auto [a, b2] = pairs[p];
      const auto [c, d] = pairs[q];
      if (a == c || a == d || b2 == c || b2 == d) continue;
      for (Mask x : classes[p]) {
        for (Mask y : classes[q]) {
          ++report.pairs_checked;
          if ((x & y) != 0) report.adjacency_ok = false;
        }
      }
    }
  }

  std::vector<Mask> two_sets;
  for (Mask x = 0; x < (1U << 6); ++x) {
    if (std::popcount(x) == 2) two_sets.push_back(x);
  }
  const Graph kneser = disjointness_graph(SetFamily(6, two_sets));
  report.kneser_chromatic_number = chromatic_number(kneser);
  report.kneser_tripartization_distance = kpartization_distance_exact(kneser, 3);
  report.passed = report.classes_in_family && report.classes_disjoint && report.adjacency_ok &&
                  report.kneser_chromatic_number == 4 &&
                  report.kneser_tripartization_distance >= 1;
  return report;
}

nlohmann::json to_json(const KneserBlowupReport& r) {
  return {{"n", r.n},
          {"family_size", r.family_size},
          {"nominal_size", r.nominal_size},
          {"class_size", r.class_size},
          {"required_class_size", r.required_class_size},
          {"classes_in_family", r.classes_in_family},
          {"classes_disjoint", r.classes_disjoint},
          {"pairs_checked", r.pairs_checked},
          {"adjacency_ok", r.adjacency_ok},
          {"kneser_chromatic_number", r.kneser_chromatic_number},
          {"kneser_tripartization_distance", r.kneser_tripartization_distance},
          {"passed", r.passed}};
}

}  // namespace genset
