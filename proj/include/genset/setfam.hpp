#pragma once

// Set families over a small ground set [n] and exact k-generation checks.
//
// Element i of [n] (1-based) is stored at bit i-1 of a 32-bit mask. Families
// are kept strictly sorted by mask value so that equal families compare equal
// member-for-member.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genset/rational.hpp"

namespace genset {

using Mask = std::uint32_t;

inline constexpr int kMaxGround = 30;
inline constexpr int kMaxCoverageGround = 24;

inline Mask full_mask(int n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

class SubsetMask {
 public:
  SubsetMask(Mask bits, int ground_n);

  static SubsetMask from_elements(std::span<const int> elements, int ground_n);

  Mask bits() const noexcept { return bits_; }
  int ground_n() const noexcept { return ground_n_; }
  int cardinality() const noexcept;
  bool contains(int element) const;
  std::vector<int> elements() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  Mask bits_;
  int ground_n_;
};

class SetFamily {
 public:
  explicit SetFamily(int ground_n);
  /// Sorts and deduplicates; every mask must lie inside [ground_n].
  SetFamily(int ground_n, std::vector<Mask> members);

  int ground_n() const noexcept { return ground_n_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Mask>& members() const noexcept { return members_; }
  SubsetMask member(std::size_t i) const { return {members_.at(i), ground_n_}; }
  bool contains(Mask m) const;

  SetFamily with_member(Mask m) const;
  SetFamily without_member(Mask m) const;
  SetFamily united_with(const SetFamily& other) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  int ground_n_;
  std::vector<Mask> members_;
};

class GroundPartition {
 public:
  /// Validates: nonempty pairwise-disjoint blocks covering [ground_n].
  GroundPartition(int ground_n, std::vector<Mask> blocks);

  int ground_n() const noexcept { return ground_n_; }
  const std::vector<Mask>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  /// Block sizes differ by at most one.
  bool is_balanced() const;

  friend bool operator==(const GroundPartition&, const GroundPartition&) = default;

 private:
  int ground_n_;
  std::vector<Mask> blocks_;
};

/// covered[x] for every x ⊆ [n]; the empty set is always covered.
class CoverageMap {
 public:
  CoverageMap(int ground_n, std::vector<bool> covered);

  int ground_n() const noexcept { return ground_n_; }
  bool covered(Mask x) const { return covered_.at(x); }
  std::uint64_t covered_count() const;
  std::uint64_t total() const noexcept { return covered_.size(); }
  bool all_covered() const { return covered_count() == total(); }
  /// Smallest uncovered mask by value, if any.
  std::optional<Mask> first_uncovered() const;

 private:
  int ground_n_;
  std::vector<bool> covered_;
};

enum class SectionSide { kLower, kUpper };

GroundPartition balanced_partition(int n, int k);
SetFamily canonical_generator(const GroundPartition& partition);
std::uint64_t canonical_size(int n, int k);

CoverageMap enumerate_k_unions(const SetFamily& family, int k);
CoverageMap enumerate_k_overlapping_unions(const SetFamily& family, int k);
bool is_k_generator(const SetFamily& family, int k);
bool is_k_base(const SetFamily& family, int k);

std::uint64_t counting_lower_bound(int n, int k);
/// 2 / (2^{1/ln 2} ln 2), i.e. 2/(e ln 2).
double crude_bound_constant();
double crude_upper_bound(int n, int k);

SetFamily section(const SetFamily& family, int element, SectionSide side);

/// Relabels ground elements: element i goes to perm[i-1] (1-based values).
Mask permute_mask(Mask m, std::span<const int> perm);
SetFamily permute_family(const SetFamily& family, std::span<const int> perm);

// Family text format:
//   n=<int>
//   1,2,5        one member per line, increasing 1-based elements
//   -            the empty set
//   # comment
SetFamily parse_family(const std::string& text);
std::string format_family(const SetFamily& family);
std::string format_mask(Mask m);

}  // namespace genset
