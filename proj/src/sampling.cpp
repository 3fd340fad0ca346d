#include "genset/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace genset {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void check_family(const SetFamily& family) {
  if (family.empty()) throw std::invalid_argument("sampling needs a nonempty family");
}

void check_trials(std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
}

// Draws t members per class and tests disjointness between the unions of
// every adjacent pair of classes. The empty set has no loop in H, so two
// adjacent classes that both drew it do not form a homomorphism.
class ClassUnionTrial {
 public:
  ClassUnionTrial(const SetFamily& family, int classes, int t,
                  std::vector<std::pair<int, int>> adjacent)
      : members_(family.members()),
        classes_(classes),
        t_(t),
        adjacent_(std::move(adjacent)) {}

  bool operator()(SplitMix64& rng) const {
    std::vector<Mask> unions(classes_, 0);
    std::vector<bool> drew_empty(classes_, false);
    for (int c = 0; c < classes_; ++c) {
      for (int j = 0; j < t_; ++j) {
        const Mask m = members_[rng.below(members_.size())];
        unions[c] |= m;
        if (m == 0) drew_empty[c] = true;
      }
    }
    for (auto [a, b] : adjacent_) {
      if ((unions[a] & unions[b]) != 0) return false;
      if (drew_empty[a] && drew_empty[b]) return false;
    }
    return true;
  }

 private:
  const std::vector<Mask>& members_;
  int classes_;
  int t_;
  std::vector<std::pair<int, int>> adjacent_;
};

bool non_bipartite(const std::vector<std::uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  std::uint64_t seen = 0;
  std::uint64_t side = 0;
  for (int s = 0; s < n; ++s) {
    if ((seen >> s) & 1U) continue;
    seen |= std::uint64_t{1} << s;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      const bool u_side = (side >> u) & 1U;
      for (std::uint64_t c = adj[u]; c != 0; c &= c - 1) {
        const int v = std::countr_zero(c);
        if ((seen >> v) & 1U) {
          if (((side >> v) & 1U) == u_side) return true;
          continue;
        }
        seen |= std::uint64_t{1} << v;
        if (!u_side) side |= std::uint64_t{1} << v;
        queue.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below() needs a positive bound");
  // Reject the low residue class that would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64(mix64(seed ^ mix64(trial * kGolden + 1)));
}

std::optional<double> DensityEstimate::zero_success_bound() const {
  if (successes != 0) return std::nullopt;
  return std::min(1.0, 3.0 / static_cast<double>(trials));
}

DensityEstimate make_estimate(std::uint64_t successes, std::uint64_t trials,
                              std::uint64_t seed) {
  check_trials(trials);
  DensityEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.successes = successes;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  return e;
}

nlohmann::json to_json(const DensityEstimate& estimate, std::optional<double> exact) {
  nlohmann::json out{{"mean", estimate.mean},
                     {"std_error", estimate.std_error},
                     {"trials", estimate.trials},
                     {"seed", estimate.seed},
                     {"successes", estimate.successes}};
  if (auto bound = estimate.zero_success_bound()) out["upper_bound_95"] = *bound;
  if (exact) out["exact"] = *exact;
  return out;
}

std::uint64_t run_trials(std::uint64_t trials, std::uint64_t seed, int threads,
                         const std::function<bool(SplitMix64&)>& trial) {
  check_trials(trials);
  const auto workers = static_cast<std::uint64_t>(
      std::clamp<std::uint64_t>(threads < 1 ? 1 : threads, 1, trials));
  std::vector<std::uint64_t> hits(workers, 0);
  auto work = [&](std::uint64_t w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = trial_stream(seed, i);
      if (trial(rng)) ++hits[w];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

DensityEstimate estimate_blowup_density(const SetFamily& family, int parts, int t,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int threads) {
  check_family(family);
  if (parts < 1 || t < 1) throw std::invalid_argument("parts and t must be positive");
  std::vector<std::pair<int, int>> adjacent;
  for (int a = 0; a < parts; ++a) {
    for (int b = a + 1; b < parts; ++b) adjacent.emplace_back(a, b);
  }
  const ClassUnionTrial trial(family, parts, t, std::move(adjacent));
  return make_estimate(run_trials(trials, seed, threads, std::cref(trial)), trials, seed);
}

DensityEstimate estimate_odd_cycle_density(const SetFamily& family, int l, int t,
                                           std::uint64_t trials, std::uint64_t seed,
                                           int threads) {
  check_family(family);
  if (l < 1 || t < 1) throw std::invalid_argument("l and t must be positive");
  const int length = 2 * l + 1;
  std::vector<std::pair<int, int>> adjacent;
  for (int a = 0; a < length; ++a) adjacent.emplace_back(a, (a + 1) % length);
  const ClassUnionTrial trial(family, length, t, std::move(adjacent));
  return make_estimate(run_trials(trials, seed, threads, std::cref(trial)), trials, seed);
}

TailBound analytic_tail_bound(int n, std::uint64_t m, int t, const Rational& theta) {
  if (n < 0 || m < 1 || t < 1) throw std::invalid_argument("tail bound needs n >= 0, m, t >= 1");
  if (theta < 0 || theta > 1) throw std::invalid_argument("theta must lie in [0, 1]");
  const BigInt top = numerator(theta) * n / denominator(theta);
  const int s_max = top.convert_to<int>();
  TailBound out;
  out.exact = 0;
  for (int s = 0; s <= s_max; ++s) {
    out.exact += Rational(binomial(n, s)) *
                 rational_pow(Rational(BigInt(1) << s, BigInt(m)), static_cast<unsigned>(t));
  }
  out.value = to_double(out.exact);
  return out;
}

DensityEstimate empirical_union_tail(const SetFamily& family, int t, const Rational& theta,
                                     std::uint64_t trials, std::uint64_t seed, int threads) {
  check_family(family);
  if (t < 1) throw std::invalid_argument("t must be positive");
  if (theta < 0 || theta > 1) throw std::invalid_argument("theta must lie in [0, 1]");
  const BigInt top = numerator(theta) * family.ground_n() / denominator(theta);
  const int limit = top.convert_to<int>();
  const auto& members = family.members();
  auto trial = [&](SplitMix64& rng) {
    Mask u = 0;
    for (int j = 0; j < t; ++j) u |= members[rng.below(members.size())];
    return std::popcount(u) <= limit;
  };
  return make_estimate(run_trials(trials, seed, threads, trial), trials, seed);
}

DensityEstimate odd_cycle_subset_test(const SetFamily& family, int s, std::uint64_t trials,
                                      std::uint64_t seed, int threads) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  const std::size_t pick = static_cast<std::size_t>(2 * s + 1);
  if (pick > family.size()) throw std::invalid_argument("family has fewer than 2s+1 members");
  if (pick > 64) throw std::invalid_argument("2s+1 must not exceed 64");
  const auto& members = family.members();
  auto trial = [&](SplitMix64& rng) {
    std::vector<std::size_t> index(members.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    // Partial Fisher-Yates: the first `pick` slots form a uniform subset.
    for (std::size_t i = 0; i < pick; ++i) {
      const std::size_t j = i + rng.below(index.size() - i);
      std::swap(index[i], index[j]);
    }
    std::vector<std::uint64_t> adj(pick, 0);
    for (std::size_t a = 0; a < pick; ++a) {
      for (std::size_t b = a + 1; b < pick; ++b) {
        if ((members[index[a]] & members[index[b]]) == 0) {
          adj[a] |= std::uint64_t{1} << b;
          adj[b] |= std::uint64_t{1} << a;
        }
      }
    }
    return non_bipartite(adj);
  };
  return make_estimate(run_trials(trials, seed, threads, trial), trials, seed);
}

}  // namespace genset
