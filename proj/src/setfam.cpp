#include "genset/setfam.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "genset/errors.hpp"

namespace genset {

namespace {

void check_ground(int n) {
  if (n < 0 || n > kMaxGround) {
    throw std::invalid_argument("ground size must lie in [0, 30], got " +
                                std::to_string(n));
  }
}

void check_n_k(int n, int k) {
  if (n < 1 || n > kMaxGround) {
    throw std::invalid_argument("n must lie in [1, 30], got " + std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument("k must lie in [1, n], got k=" + std::to_string(k) +
                                " n=" + std::to_string(n));
  }
}

enum class UnionKind { kDisjoint, kOverlapping };

CoverageMap closure(const SetFamily& family, int k, UnionKind kind) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const int n = family.ground_n();
  if (n > kMaxCoverageGround) {
    throw CapacityError("coverage tables need ground size <= 24, got " +
                        std::to_string(n));
  }
  const std::size_t table = std::size_t{1} << n;
  std::vector<std::uint8_t> covered(table, 0);
  covered[0] = 1;
  // Sets first reached at the previous level; older sets were already combined.
  std::vector<Mask> frontier{0};
  std::vector<Mask> next;
  for (int level = 1; level <= k && !frontier.empty(); ++level) {
    next.clear();
    for (Mask x : frontier) {
      for (Mask m : family.members()) {
        if (kind == UnionKind::kDisjoint && (x & m) != 0) continue;
        const Mask y = x | m;
        if (!covered[y]) {
          covered[y] = 1;
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return CoverageMap(n, std::vector<bool>(covered.begin(), covered.end()));
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& token, std::size_t line) {
  int value = 0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

SubsetMask::SubsetMask(Mask bits, int ground_n) : bits_(bits), ground_n_(ground_n) {
  check_ground(ground_n);
  if ((bits & ~full_mask(ground_n)) != 0) {
    throw std::invalid_argument("subset has an element outside [" +
                                std::to_string(ground_n) + "]");
  }
}

SubsetMask SubsetMask::from_elements(std::span<const int> elements, int ground_n) {
  check_ground(ground_n);
  Mask bits = 0;
  for (int e : elements) {
    if (e < 1 || e > ground_n) {
      throw std::invalid_argument("element " + std::to_string(e) + " outside [" +
                                  std::to_string(ground_n) + "]");
    }
    bits |= Mask{1} << (e - 1);
  }
  return {bits, ground_n};
}

int SubsetMask::cardinality() const noexcept { return std::popcount(bits_); }

bool SubsetMask::contains(int element) const {
  if (element < 1 || element > ground_n_) return false;
  return (bits_ >> (element - 1)) & 1U;
}

std::vector<int> SubsetMask::elements() const {
  std::vector<int> out;
  for (int i = 0; i < ground_n_; ++i) {
    if ((bits_ >> i) & 1U) out.push_back(i + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

SetFamily::SetFamily(int ground_n) : ground_n_(ground_n) { check_ground(ground_n); }

SetFamily::SetFamily(int ground_n, std::vector<Mask> members)
    : ground_n_(ground_n), members_(std::move(members)) {
  check_ground(ground_n);
  const Mask full = full_mask(ground_n);
  for (Mask m : members_) {
    if ((m & ~full) != 0) {
      throw std::invalid_argument("family member outside [" +
                                  std::to_string(ground_n) + "]");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(Mask m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

SetFamily SetFamily::with_member(Mask m) const {
  auto copy = members_;
  copy.push_back(m);
  return {ground_n_, std::move(copy)};
}

SetFamily SetFamily::without_member(Mask m) const {
  auto copy = members_;
  copy.erase(std::remove(copy.begin(), copy.end(), m), copy.end());
  return {ground_n_, std::move(copy)};
}

SetFamily SetFamily::united_with(const SetFamily& other) const {
  if (other.ground_n_ != ground_n_) {
    throw std::invalid_argument("cannot unite families over different ground sets");
  }
  auto copy = members_;
  copy.insert(copy.end(), other.members_.begin(), other.members_.end());
  return {ground_n_, std::move(copy)};
}

// ---------------------------------------------------------------------------

GroundPartition::GroundPartition(int ground_n, std::vector<Mask> blocks)
    : ground_n_(ground_n), blocks_(std::move(blocks)) {
  check_ground(ground_n);
  Mask seen = 0;
  for (Mask b : blocks_) {
    if (b == 0) throw std::invalid_argument("partition has an empty block");
    if ((b & seen) != 0) throw std::invalid_argument("partition blocks overlap");
    seen |= b;
  }
  if (seen != full_mask(ground_n)) {
    throw std::invalid_argument("partition blocks do not cover the ground set");
  }
}

bool GroundPartition::is_balanced() const {
  if (blocks_.empty()) return true;
  int lo = kMaxGround + 1;
  int hi = 0;
  for (Mask b : blocks_) {
    lo = std::min(lo, std::popcount(b));
    hi = std::max(hi, std::popcount(b));
  }
  return hi - lo <= 1;
}

// ---------------------------------------------------------------------------

CoverageMap::CoverageMap(int ground_n, std::vector<bool> covered)
    : ground_n_(ground_n), covered_(std::move(covered)) {
  if (covered_.size() != (std::size_t{1} << ground_n)) {
    throw std::invalid_argument("coverage table must have 2^n entries");
  }
  covered_[0] = true;
}

std::uint64_t CoverageMap::covered_count() const {
  return static_cast<std::uint64_t>(std::count(covered_.begin(), covered_.end(), true));
}

std::optional<Mask> CoverageMap::first_uncovered() const {
  for (std::size_t x = 0; x < covered_.size(); ++x) {
    if (!covered_[x]) return static_cast<Mask>(x);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

GroundPartition balanced_partition(int n, int k) {
  check_n_k(n, k);
  const int q = n / k;
  const int r = n % k;
  std::vector<Mask> blocks;
  int next = 0;
  for (int i = 0; i < k; ++i) {
    const int size = q + (i < r ? 1 : 0);
    blocks.push_back(full_mask(size) << next);
    next += size;
  }
  return {n, std::move(blocks)};
}

SetFamily canonical_generator(const GroundPartition& partition) {
  std::vector<Mask> members;
  for (Mask block : partition.blocks()) {
    for (Mask sub = block; sub != 0; sub = (sub - 1) & block) members.push_back(sub);
  }
  return {partition.ground_n(), std::move(members)};
}

std::uint64_t canonical_size(int n, int k) {
  check_n_k(n, k);
  const std::uint64_t q = static_cast<std::uint64_t>(n / k);
  const std::uint64_t r = static_cast<std::uint64_t>(n % k);
  return (static_cast<std::uint64_t>(k) + r) * (std::uint64_t{1} << q) -
         static_cast<std::uint64_t>(k);
}

CoverageMap enumerate_k_unions(const SetFamily& family, int k) {
  return closure(family, k, UnionKind::kDisjoint);
}

CoverageMap enumerate_k_overlapping_unions(const SetFamily& family, int k) {
  return closure(family, k, UnionKind::kOverlapping);
}

bool is_k_generator(const SetFamily& family, int k) {
  return enumerate_k_unions(family, k).all_covered();
}

bool is_k_base(const SetFamily& family, int k) {
  return enumerate_k_overlapping_unions(family, k).all_covered();
}

std::uint64_t counting_lower_bound(int n, int k) {
  check_n_k(n, k);
  const BigInt target = BigInt(1) << n;
  auto reach = [&](std::uint64_t m) {
    BigInt sum = 0;
    for (int i = 0; i <= k; ++i) sum += binomial(static_cast<std::int64_t>(m), i);
    return sum >= target;
  };
  // The sum is nondecreasing in m, so bisect for the first m that reaches 2^n.
  std::uint64_t lo = 0;
  std::uint64_t hi = std::uint64_t{1} << n;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (reach(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double crude_bound_constant() {
  const double ln2 = std::numbers::ln2;
  return 2.0 / (std::pow(2.0, 1.0 / ln2) * ln2);
}

double crude_upper_bound(int n, int k) {
  check_n_k(n, k);
  return crude_bound_constant() * k * std::pow(2.0, static_cast<double>(n) / k);
}

SetFamily section(const SetFamily& family, int element, SectionSide side) {
  if (element < 1 || element > family.ground_n()) {
    throw std::invalid_argument("section element " + std::to_string(element) +
                                " outside [" + std::to_string(family.ground_n()) +
                                "]");
  }
  const Mask bit = Mask{1} << (element - 1);
  std::vector<Mask> out;
  for (Mask m : family.members()) {
    const bool has = (m & bit) != 0;
    if (side == SectionSide::kLower && !has) out.push_back(m);
    if (side == SectionSide::kUpper && has) out.push_back(m & ~bit);
  }
  return {family.ground_n(), std::move(out)};
}

Mask permute_mask(Mask m, std::span<const int> perm) {
  Mask out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if ((m >> i) & 1U) out |= Mask{1} << (perm[i] - 1);
  }
  return out;
}

SetFamily permute_family(const SetFamily& family, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != family.ground_n()) {
    throw std::invalid_argument("permutation length must equal the ground size");
  }
  Mask image = 0;
  for (int v : perm) {
    if (v < 1 || v > family.ground_n()) throw std::invalid_argument("permutation value out of range");
    image |= Mask{1} << (v - 1);
  }
  if (image != full_mask(family.ground_n())) throw std::invalid_argument("not a permutation");
  std::vector<Mask> out;
  out.reserve(family.size());
  for (Mask m : family.members()) out.push_back(permute_mask(m, perm));
  return {family.ground_n(), std::move(out)};
}

// ---------------------------------------------------------------------------

std::string format_mask(Mask m) {
  if (m == 0) return "-";
  std::string out;
  for (int i = 0; i < 32; ++i) {
    if ((m >> i) & 1U) {
      if (!out.empty()) out += ',';
      out += std::to_string(i + 1);
    }
  }
  return out;
}

std::string format_family(const SetFamily& family) {
  std::string out = "n=" + std::to_string(family.ground_n()) + "\n";
  for (Mask m : family.members()) {
    out += format_mask(m);
    out += '\n';
  }
  return out;
}

SetFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::optional<int> n;
  std::vector<Mask> members;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!n) {
      if (line.rfind("n=", 0) != 0) throw ParseError(line_no, "expected 'n=<int>' header");
      const int value = parse_int(trim(line.substr(2)), line_no);
      if (value < 1 || value > kMaxGround) {
        throw ParseError(line_no, "ground size must lie in [1, 30]");
      }
      n = value;
      continue;
    }
    if (line == "-") {
      members.push_back(0);
      continue;
    }
    Mask m = 0;
    int previous = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      const std::string token =
          trim(line.substr(start, comma == std::string::npos ? std::string::npos
                                                             : comma - start));
      const int element = parse_int(token, line_no);
      if (element < 1 || element > *n) {
        throw ParseError(line_no, "element " + token + " outside [1, " +
                                      std::to_string(*n) + "]");
      }
      if (element <= previous) {
        throw ParseError(line_no, "elements must be strictly increasing");
      }
      previous = element;
      m |= Mask{1} << (element - 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    members.push_back(m);
  }
  if (!n) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'n=<int>' header");
  return {*n, std::move(members)};
}

}  // namespace genset
