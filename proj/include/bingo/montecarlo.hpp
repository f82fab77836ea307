#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "card.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace bingo {

/// Summary of simulated game lengths.
struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double sample_variance = 0;
  /// False when trials == 1; sample_variance is then reported as 0.
  bool variance_defined = false;
  double standard_error = 0;
  double ci95_low = 0;
  double ci95_high = 0;
  /// length_counts[k] = number of games that ended after exactly k calls.
  std::vector<std::uint64_t> length_counts;
};

struct SimConfig {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Plays games on a fixed line set. Each game draws a uniformly random call
/// order and ends at min over lines of (max call index over the line).
class GameSimulator {
 public:
  explicit GameSimulator(const LineSet& lines) : pool_(lines.universe_size()) {
    if (lines.empty()) throw ValidationError("simulation needs at least one line");
    offsets_.push_back(0);
    for (const auto& line : lines.lines()) {
      for (int x : line.numbers) numbers_.push_back(static_cast<std::uint32_t>(x - 1));
      offsets_.push_back(numbers_.size());
    }
    call_index_.resize(static_cast<std::size_t>(pool_));
  }

  int pool_size() const noexcept { return pool_; }

  int play(SplitMix64& rng) {
    std::iota(call_index_.begin(), call_index_.end(), 1U);
    shuffle(std::span<std::uint32_t>(call_index_), rng);
    std::uint32_t best = static_cast<std::uint32_t>(pool_);
    for (std::size_t l = 0; l + 1 < offsets_.size(); ++l) {
      std::uint32_t done = 0;
      for (std::size_t i = offsets_[l]; i < offsets_[l + 1]; ++i) done = std::max(done, call_index_[numbers_[i]]);
      best = std::min(best, done);
    }
    return static_cast<int>(best);
  }

  /// True when no line is fully marked, each number marked with probability p.
  bool no_line_marked(SplitMix64& rng, double p) {
    for (auto& mark : call_index_) mark = rng.unit() < p ? 1U : 0U;
    for (std::size_t l = 0; l + 1 < offsets_.size(); ++l) {
      bool full = true;
      for (std::size_t i = offsets_[l]; i < offsets_[l + 1] && full; ++i) full = call_index_[numbers_[i]] != 0;
      if (full) return false;
    }
    return true;
  }

 private:
  int pool_;
  std::vector<std::uint32_t> numbers_;  // 0-based, concatenated lines
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> call_index_;
};

/// Calls until the first completed line for one random game.
inline int simulate_game(const LineSet& lines, SplitMix64& rng) { return GameSimulator(lines).play(rng); }

namespace detail {

// Runs trials [0, trials) split into contiguous blocks; trial t always uses
// stream_seed(seed, t), so the histogram is schedule-independent.
template <typename PerTrial>
std::vector<std::uint64_t> run_histogram(const LineSet& lines, std::uint64_t trials, std::uint64_t seed,
                                         unsigned workers, std::size_t bins, PerTrial per_trial) {
  workers = std::max(1U, workers);
  if (workers > trials) workers = static_cast<unsigned>(trials);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
  auto block = [&](unsigned w) {
    GameSimulator sim(lines);
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(stream_seed(seed, t));
      ++partial[w][per_trial(sim, rng)];
    }
  };
  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(block, w);
  }
  std::vector<std::uint64_t> total(bins, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < bins; ++i) total[i] += p[i];
  }
  return total;
}

}  // namespace detail

/// Summary statistics of a game-length histogram. Sums are exact integers,
/// so the result is independent of how trials were partitioned.
inline TrialStats stats_from_histogram(std::vector<std::uint64_t> counts, std::uint64_t seed) {
  TrialStats stats;
  stats.seed = seed;
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    stats.trials += counts[k];
    sum += static_cast<unsigned __int128>(counts[k]) * k;
    sum_sq += static_cast<unsigned __int128>(counts[k]) * k * k;
  }
  if (stats.trials == 0) throw ValidationError("no trials");
  const auto t = static_cast<long double>(stats.trials);
  stats.mean = static_cast<double>(static_cast<long double>(sum) / t);
  if (stats.trials > 1) {
    // (T sum x^2 - (sum x)^2) / (T (T-1)), numerator exact.
    const unsigned __int128 spread = static_cast<unsigned __int128>(stats.trials) * sum_sq - sum * sum;
    stats.sample_variance = static_cast<double>(static_cast<long double>(spread) / (t * (t - 1)));
    stats.variance_defined = true;
  }
  stats.standard_error = std::sqrt(stats.sample_variance / static_cast<double>(stats.trials));
  stats.ci95_low = stats.mean - 1.96 * stats.standard_error;
  stats.ci95_high = stats.mean + 1.96 * stats.standard_error;
  stats.length_counts = std::move(counts);
  return stats;
}

inline TrialStats run_trials(const LineSet& lines, const SimConfig& config) {
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (lines.empty()) throw ValidationError("simulation needs at least one line");
  auto counts = detail::run_histogram(lines, config.trials, config.seed, config.workers,
                                      static_cast<std::size_t>(lines.universe_size()) + 1,
                                      [](GameSimulator& sim, SplitMix64& rng) { return static_cast<std::size_t>(sim.play(rng)); });
  return stats_from_histogram(std::move(counts), config.seed);
}

/// Simulation of `players` cards generated from `card_seed`.
inline TrialStats run_trials(const CardSpec& spec, int players, const PatternFamily& family,
                             std::uint64_t card_seed, const SimConfig& config) {
  const auto cards = generate_cards(spec, players, card_seed);
  return run_trials(union_lines(cards, family), config);
}

/// Fraction of trials in which no line is fully marked under independent
/// marking with probability p; estimates Q(p).
inline double estimate_reliability(const LineSet& lines, double p, std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers = 1) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("marking probability must lie in [0, 1]");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (lines.empty()) throw ValidationError("simulation needs at least one line");
  const auto counts = detail::run_histogram(lines, trials, seed, workers, 2, [p](GameSimulator& sim, SplitMix64& rng) {
    return static_cast<std::size_t>(sim.no_line_marked(rng, p) ? 1 : 0);
  });
  return static_cast<double>(counts[1]) / static_cast<double>(trials);
}

}  // namespace bingo
