#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "card.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace bingo {

inline constexpr std::size_t kDefaultEnumerationLimit = 28;
/// Above this, |A[j]| < 2^|lines| could overflow int64.
inline constexpr std::size_t kMaxEnumerationLimit = 62;

/// Signed subset counts A[j] = sum over non-empty line subsets X whose union
/// covers j numbers of (-1)^(|X|+1). Every inclusion-exclusion quantity of the
/// game (CDF, PMF, S, reliability polynomial) is a linear functional of A.
class CoverageProfile {
 public:
  CoverageProfile() = default;
  CoverageProfile(int universe_size, std::vector<std::int64_t> counts)
      : universe_size_(universe_size), counts_(std::move(counts)) {
    if (universe_size_ < 1) throw ValidationError("profile universe must be positive");
    if (counts_.size() != static_cast<std::size_t>(universe_size_) + 1) {
      throw ValidationError("profile needs universe+1 counts");
    }
    if (counts_[0] != 0) throw ValidationError("A[0] must be zero: lines are non-empty");
  }

  int universe_size() const noexcept { return universe_size_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t operator[](int j) const { return counts_.at(static_cast<std::size_t>(j)); }

  /// Smallest j with A[j] != 0 (0 for an all-zero profile).
  int min_support() const noexcept {
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      if (counts_[j] != 0) return static_cast<int>(j);
    }
    return 0;
  }
  int max_support() const noexcept {
    for (std::size_t j = counts_.size(); j-- > 0;) {
      if (counts_[j] != 0) return static_cast<int>(j);
    }
    return 0;
  }
  std::int64_t total() const noexcept { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

  friend bool operator==(const CoverageProfile&, const CoverageProfile&) = default;

 private:
  int universe_size_ = 0;
  std::vector<std::int64_t> counts_;
};

namespace detail {

template <std::size_t Words>
using Bits = std::array<std::uint64_t, Words>;

template <std::size_t Words>
inline int popcount(const Bits<Words>& b) noexcept {
  int total = 0;
  for (auto w : b) total += std::popcount(w);
  return total;
}

template <std::size_t Words>
inline Bits<Words> operator|(const Bits<Words>& a, const Bits<Words>& b) noexcept {
  Bits<Words> out;
  for (std::size_t i = 0; i < Words; ++i) out[i] = a[i] | b[i];
  return out;
}

// Each call accounts for every subset {current} + {i} + (anything after i)
// for i >= start; `sign` is the parity weight of the first of these.
template <std::size_t Words>
void subset_dfs(const std::vector<Bits<Words>>& lines, std::size_t start, const Bits<Words>& covered,
                std::int64_t sign, std::vector<std::int64_t>& counts) {
  for (std::size_t i = start; i < lines.size(); ++i) {
    const Bits<Words> next = covered | lines[i];
    counts[static_cast<std::size_t>(popcount(next))] += sign;
    subset_dfs(lines, i + 1, next, -sign, counts);
  }
}

template <std::size_t Words>
std::vector<std::int64_t> enumerate_profile(const LineSet& lines, const std::vector<int>& index_of,
                                            int universe_bits, unsigned workers) {
  std::vector<Bits<Words>> masks;
  masks.reserve(lines.size());
  for (const auto& line : lines.lines()) {
    Bits<Words> b{};
    for (int x : line.numbers) {
      const auto bit = static_cast<std::size_t>(index_of[static_cast<std::size_t>(x)]);
      b[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    masks.push_back(b);
  }

  // Split on the include/exclude choices of the first `depth` lines.
  std::size_t depth = 0;
  while ((std::size_t{1} << depth) < workers && depth < masks.size()) ++depth;
  const std::size_t tasks = std::size_t{1} << depth;

  auto run_task = [&](std::size_t prefix, std::vector<std::int64_t>& counts) {
    Bits<Words> covered{};
    int chosen = 0;
    for (std::size_t i = 0; i < depth; ++i) {
      if ((prefix >> i) & 1U) {
        covered = covered | masks[i];
        ++chosen;
      }
    }
    std::int64_t sign = 1;  // weight of the next subset of size chosen+1
    if (chosen > 0) {
      const std::int64_t own = (chosen % 2 == 1) ? 1 : -1;
      counts[static_cast<std::size_t>(popcount(covered))] += own;
      sign = -own;
    }
    subset_dfs(masks, depth, covered, sign, counts);
  };

  const std::size_t size = static_cast<std::size_t>(universe_bits) + 1;
  std::vector<std::vector<std::int64_t>> partial(workers, std::vector<std::int64_t>(size, 0));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) run_task(t, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < tasks; t += workers) run_task(t, partial[w]);
      });
    }
  }
  std::vector<std::int64_t> total(size, 0);
  for (const auto& p : partial) {
    for (std::size_t j = 0; j < size; ++j) total[j] += p[j];
  }
  return total;
}

}  // namespace detail

/// Exact coverage profile of `lines` by depth-first subset enumeration
/// (one OR + popcount per subset). The result does not depend on `workers`.
inline CoverageProfile coverage_profile(const LineSet& lines, unsigned workers = 1,
                                        std::size_t limit = kDefaultEnumerationLimit) {
  if (lines.empty()) throw ValidationError("coverage_profile: empty line set");
  if (limit < 1 || limit > kMaxEnumerationLimit) {
    throw ValidationError("enumeration limit must be in [1, " + std::to_string(kMaxEnumerationLimit) + "]");
  }
  if (lines.size() > limit) {
    throw CapacityError(std::to_string(lines.size()) + " unique lines exceed the exact enumeration limit of " +
                        std::to_string(limit) + "; use Monte Carlo simulation instead");
  }
  if (workers < 1) workers = 1;

  // Compress to the numbers that actually occur in some line.
  const auto covered = lines.covered_numbers();
  std::vector<int> index_of(static_cast<std::size_t>(lines.universe_size()) + 1, -1);
  for (std::size_t i = 0; i < covered.size(); ++i) index_of[static_cast<std::size_t>(covered[i])] = static_cast<int>(i);
  const int bits = static_cast<int>(covered.size());

  std::vector<std::int64_t> compressed;
  if (bits <= 64) compressed = detail::enumerate_profile<1>(lines, index_of, bits, workers);
  else if (bits <= 128) compressed = detail::enumerate_profile<2>(lines, index_of, bits, workers);
  else if (bits <= 256) compressed = detail::enumerate_profile<4>(lines, index_of, bits, workers);
  else if (bits <= 512) compressed = detail::enumerate_profile<8>(lines, index_of, bits, workers);
  else if (bits <= 1024) compressed = detail::enumerate_profile<16>(lines, index_of, bits, workers);
  else if (bits <= 2048) compressed = detail::enumerate_profile<32>(lines, index_of, bits, workers);
  else throw CapacityError("lines cover " + std::to_string(bits) + " numbers; at most 2048 supported");

  std::vector<std::int64_t> counts(static_cast<std::size_t>(lines.universe_size()) + 1, 0);
  std::copy(compressed.begin(), compressed.end(), counts.begin());
  CoverageProfile profile(lines.universe_size(), std::move(counts));
  if (profile.total() != 1) {
    throw std::logic_error("coverage profile does not sum to 1: " + std::to_string(profile.total()));
  }
  return profile;
}

/// S = sum_j A[j] / (j+1), exactly.
inline Rational s_value(const CoverageProfile& profile) {
  Rational s = 0;
  const auto counts = profile.counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] != 0) s += Rational(counts[j], static_cast<std::int64_t>(j + 1));
  }
  return s;
}

/// Floating-point S for sweeps; compensated summation in long double.
inline double s_value_fast(const CoverageProfile& profile) {
  long double sum = 0;
  long double compensation = 0;
  const auto counts = profile.counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const long double term = static_cast<long double>(counts[j]) / static_cast<long double>(j + 1) - compensation;
    const long double next = sum + term;
    compensation = (next - sum) - term;
    sum = next;
  }
  return static_cast<double>(sum);
}

}  // namespace bingo
