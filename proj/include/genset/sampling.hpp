#pragma once

// Seeded Monte-Carlo estimators over disjointness graphs of set families.
//
// Every trial draws from its own SplitMix64 stream derived from (seed, trial
// index), so results do not depend on the thread count or on how many trials
// follow.

#include <cstdint>
#include <functional>
#include <optional>

#include <json.hpp>

#include "genset/rational.hpp"
#include "genset/setfam.hpp"

namespace genset {

/// Steele, Lea & Flood's SplitMix64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial);

struct DensityEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t successes = 0;

  /// One-sided 95% upper bound when no trial succeeded (rule of three).
  std::optional<double> zero_success_bound() const;
};

DensityEstimate make_estimate(std::uint64_t successes, std::uint64_t trials,
                              std::uint64_t seed);
nlohmann::json to_json(const DensityEstimate& estimate,
                       std::optional<double> exact = std::nullopt);

/// Counts successful trials; trial i always sees trial_stream(seed, i).
std::uint64_t run_trials(std::uint64_t trials, std::uint64_t seed, int threads,
                         const std::function<bool(SplitMix64&)>& trial);

/// h_{K_parts ⊗ t}(H[f]): draw parts·t members with replacement and test that
/// the per-class unions are pairwise disjoint.
DensityEstimate estimate_blowup_density(const SetFamily& family, int parts, int t,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int threads = 1);

/// h_{C_{2l+1} ⊗ t}(H[f]): cyclically consecutive unions must be disjoint.
DensityEstimate estimate_odd_cycle_density(const SetFamily& family, int l, int t,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int threads = 1);

struct TailBound {
  Rational exact;
  double value = 0;
};

/// Sum over s = 0..floor(theta n) of C(n, s) (2^s / m)^t.
TailBound analytic_tail_bound(int n, std::uint64_t m, int t, const Rational& theta);

/// Pr(|union of t uniform members| <= theta n).
DensityEstimate empirical_union_tail(const SetFamily& family, int t, const Rational& theta,
                                     std::uint64_t trials, std::uint64_t seed,
                                     int threads = 1);

/// Pr(a uniform (2s+1)-subset of the family induces a non-bipartite
/// disjointness graph).
DensityEstimate odd_cycle_subset_test(const SetFamily& family, int s, std::uint64_t trials,
                                      std::uint64_t seed, int threads = 1);

}  // namespace genset
