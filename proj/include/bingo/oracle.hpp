#pragma once

// Brute-force reference values for tiny instances. Everything here is
// obtained by direct counting over call sets or markings; nothing goes
// through the coverage profile, so it can check that code path.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "card.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace bingo::oracle {

inline constexpr int kMaxPool = 24;
inline constexpr int kMaxMarkingUniverse = 20;

namespace detail {

inline std::vector<std::uint32_t> line_masks(const LineSet& lines, const std::vector<int>& bit_of) {
  std::vector<std::uint32_t> masks;
  for (const auto& line : lines.lines()) {
    std::uint32_t mask = 0;
    for (int x : line.numbers) mask |= std::uint32_t{1} << bit_of[static_cast<std::size_t>(x)];
    masks.push_back(mask);
  }
  return masks;
}

inline bool holds_line(std::uint32_t called, const std::vector<std::uint32_t>& masks) {
  for (auto m : masks) {
    if ((called & m) == m) return true;
  }
  return false;
}

inline void check_pool(const LineSet& lines, int pool_size) {
  if (lines.empty()) throw ValidationError("oracle needs at least one line");
  if (pool_size > kMaxPool) {
    throw CapacityError("oracle pool " + std::to_string(pool_size) + " exceeds " + std::to_string(kMaxPool));
  }
  if (lines.covered_numbers().back() > pool_size) {
    throw ValidationError("line numbers exceed the pool");
  }
}

inline std::vector<int> identity_bits(int pool_size) {
  std::vector<int> bit_of(static_cast<std::size_t>(pool_size) + 1, 0);
  for (int x = 1; x <= pool_size; ++x) bit_of[static_cast<std::size_t>(x)] = x - 1;
  return bit_of;
}

// Calls every k-subset of the pool (Gosper's hack) and tallies both the
// subsets and those holding a complete line.
struct KSubsetCount {
  std::uint64_t winning = 0;
  std::uint64_t total = 0;
};

inline KSubsetCount count_k_subsets(const std::vector<std::uint32_t>& masks, int pool_size, int k) {
  KSubsetCount out;
  if (k == 0) {
    out.total = 1;
    out.winning = holds_line(0, masks) ? 1 : 0;
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << pool_size;
  std::uint64_t subset = (std::uint64_t{1} << k) - 1;
  while (subset < limit) {
    ++out.total;
    if (holds_line(static_cast<std::uint32_t>(subset), masks)) ++out.winning;
    const std::uint64_t lowest = subset & (0 - subset);
    const std::uint64_t ripple = subset + lowest;
    subset = (((ripple ^ subset) >> 2) / lowest) | ripple;
  }
  return out;
}

}  // namespace detail

/// P(some line complete after k calls) = (#k-call sets holding a line) / (#k-call sets).
inline Rational exact_cdf_by_subsets(const LineSet& lines, int k, int pool_size) {
  detail::check_pool(lines, pool_size);
  if (k < 0 || k > pool_size) throw ValidationError("k outside [0, pool]");
  const auto masks = detail::line_masks(lines, detail::identity_bits(pool_size));
  const auto count = detail::count_k_subsets(masks, pool_size, k);
  return Rational(BigInt(count.winning), BigInt(count.total));
}

inline Rational exact_cdf_by_subsets(const LineSet& lines, int k) {
  return exact_cdf_by_subsets(lines, k, lines.universe_size());
}

/// E[B] = sum_k k (F(k) - F(k-1)) with F from exact_cdf_by_subsets.
inline Rational exact_expectation_by_enumeration(const LineSet& lines, int pool_size) {
  detail::check_pool(lines, pool_size);
  Rational expectation = 0;
  Rational previous = 0;
  for (int k = 1; k <= pool_size; ++k) {
    const Rational current = exact_cdf_by_subsets(lines, k, pool_size);
    expectation += Rational(k) * (current - previous);
    previous = current;
  }
  return expectation;
}

/// Sum of p^|M| (1-p)^(U-|M|) over markings M of the covered numbers that
/// contain a full line. `Real` is double or Rational.
template <typename Real>
Real exact_reliability_by_grids(const LineSet& lines, const Real& p) {
  if (lines.empty()) throw ValidationError("oracle needs at least one line");
  if (p < 0 || p > 1) throw ValidationError("marking probability must lie in [0, 1]");
  const auto covered = lines.covered_numbers();
  const int universe = static_cast<int>(covered.size());
  if (universe > kMaxMarkingUniverse) {
    throw CapacityError("oracle marking universe " + std::to_string(universe) + " exceeds " +
                        std::to_string(kMaxMarkingUniverse));
  }
  std::vector<int> bit_of(static_cast<std::size_t>(lines.universe_size()) + 1, 0);
  for (int i = 0; i < universe; ++i) bit_of[static_cast<std::size_t>(covered[static_cast<std::size_t>(i)])] = i;
  const auto masks = detail::line_masks(lines, bit_of);

  // weight[c] = p^c (1-p)^(U-c)
  std::vector<Real> weight(static_cast<std::size_t>(universe) + 1);
  const Real q = Real(1) - p;
  for (int c = 0; c <= universe; ++c) {
    Real w = 1;
    for (int i = 0; i < c; ++i) w *= p;
    for (int i = c; i < universe; ++i) w *= q;
    weight[static_cast<std::size_t>(c)] = w;
  }
  std::vector<std::uint64_t> winning_by_size(static_cast<std::size_t>(universe) + 1, 0);
  for (std::uint32_t marking = 0; marking < (std::uint32_t{1} << universe); ++marking) {
    if (detail::holds_line(marking, masks)) ++winning_by_size[static_cast<std::size_t>(std::popcount(marking))];
  }
  Real total = 0;
  for (int c = 0; c <= universe; ++c) {
    total += Real(winning_by_size[static_cast<std::size_t>(c)]) * weight[static_cast<std::size_t>(c)];
  }
  return total;
}

}  // namespace bingo::oracle
