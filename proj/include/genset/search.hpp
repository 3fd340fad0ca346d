#pragma once

// Exact minimum k-generator / k-base search and the six-block counterexample
// family.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genset/setfam.hpp"

namespace genset {

inline constexpr int kMaxSearchGround = 8;

enum class SearchMode { kGenerator, kBase };
enum class SearchStatus { kComplete, kCapped, kTimeout };

std::string to_string(SearchMode mode);
std::string to_string(SearchStatus status);

struct SearchBudget {
  double seconds = 0;           // 0 = unlimited
  std::uint64_t node_limit = 0;  // 0 = unlimited
};

struct SearchOptions {
  SearchMode mode = SearchMode::kGenerator;
  bool enumerate_optima = false;
  SearchBudget budget;
  std::size_t optima_cap = 10000;
  bool symmetry_breaking = true;
};

struct SearchResult {
  int n = 0;
  int k = 0;
  SearchMode mode = SearchMode::kGenerator;
  std::uint64_t min_size = 0;     // best size found (exact when complete)
  std::uint64_t lower_bound = 0;  // proven lower bound
  std::vector<SetFamily> optima;
  std::uint64_t optima_count = 0;
  bool optima_count_exact = false;
  std::uint64_t nodes = 0;
  SearchStatus status = SearchStatus::kComplete;
};

SearchResult min_generator_size(int n, int k, const SearchOptions& options = {});
nlohmann::json to_json(const SearchResult& result);

struct CanonicityVerdict {
  bool is_canonical = false;
  std::optional<GroundPartition> witness_partition;
};

CanonicityVerdict is_canonical(const SetFamily& family, int k);

/// Number of partitions of [n] into k blocks of sizes as equal as possible.
std::uint64_t balanced_partition_count(int n, int k);

struct ConjectureReport {
  int n = 0;
  int k = 0;
  std::uint64_t canonical_size = 0;
  std::uint64_t min_size = 0;
  bool size_matches = false;
  bool uniqueness_checked = false;  // only claimed for n > 2k
  std::uint64_t optima_count = 0;
  std::uint64_t balanced_partitions = 0;
  bool all_optima_canonical = false;
  bool partitions_distinct = false;
  bool inconclusive = false;
  bool confirmed = false;
  std::uint64_t nodes = 0;
};

ConjectureReport verify_conjecture(int n, int k, const SearchBudget& budget = {});
nlohmann::json to_json(const ConjectureReport& report);

/// Union of the power sets of T_i ∪ T_j over all pairs of a six-block
/// equipartition of [n] (consecutive blocks).
SetFamily counterexample_family(int n);

struct KneserBlowupReport {
  int n = 0;
  std::size_t family_size = 0;
  std::uint64_t nominal_size = 0;  // 15 * 2^{n/3}, ignoring overlaps
  std::size_t class_size = 0;
  std::uint64_t required_class_size = 0;  // 2^{n/3 - 2}
  bool classes_in_family = false;
  bool classes_disjoint = false;
  std::uint64_t pairs_checked = 0;
  bool adjacency_ok = false;
  int kneser_chromatic_number = 0;
  std::int64_t kneser_tripartization_distance = 0;
  bool passed = false;
};

KneserBlowupReport verify_kneser_blowup(int n);
nlohmann::json to_json(const KneserBlowupReport& report);

}  // namespace genset
