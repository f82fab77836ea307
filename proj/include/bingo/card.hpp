#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace bingo {

/// Game parameters of an (n,m) card: n x n grid, column j drawing from
/// the m values [m(j-1)+1, mj]. The number pool is 1..m*n.
struct CardSpec {
  int n = 5;
  int m = 15;
  bool free_space = false;

  int pool_size() const noexcept { return n * m; }
  int center() const noexcept { return (n / 2) * n + n / 2; }

  void validate() const {
    if (n < 3 || n % 2 == 0) throw ValidationError("n must be odd and >= 3, got " + std::to_string(n));
    if (m < n) throw ValidationError("m must be >= n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }

  friend bool operator==(const CardSpec&, const CardSpec&) = default;
};

/// Grid position (0-based).
struct Position {
  int row = 0;
  int col = 0;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

struct StandardLines {};
struct FourCorners {};
struct CustomPatterns {
  std::vector<std::vector<Position>> patterns;
};

/// Which sets of squares win the game.
using PatternFamily = std::variant<StandardLines, FourCorners, CustomPatterns>;

/// Position sets of every pattern of `family` on an n x n grid, in a fixed
/// order: rows, columns, main diagonal, anti-diagonal for StandardLines.
inline std::vector<std::vector<Position>> pattern_positions(const PatternFamily& family, int n) {
  std::vector<std::vector<Position>> out;
  if (std::holds_alternative<StandardLines>(family)) {
    for (int r = 0; r < n; ++r) {
      auto& row = out.emplace_back();
      for (int c = 0; c < n; ++c) row.push_back({r, c});
    }
    for (int c = 0; c < n; ++c) {
      auto& col = out.emplace_back();
      for (int r = 0; r < n; ++r) col.push_back({r, c});
    }
    auto& diag = out.emplace_back();
    for (int i = 0; i < n; ++i) diag.push_back({i, i});
    auto& anti = out.emplace_back();
    for (int i = 0; i < n; ++i) anti.push_back({i, n - 1 - i});
  } else if (std::holds_alternative<FourCorners>(family)) {
    out.push_back({{0, 0}, {0, n - 1}, {n - 1, 0}, {n - 1, n - 1}});
  } else {
    for (const auto& pattern : std::get<CustomPatterns>(family).patterns) {
      if (pattern.empty()) throw ValidationError("custom pattern must not be empty");
      for (const auto& p : pattern) {
        if (p.row < 0 || p.row >= n || p.col < 0 || p.col >= n) {
          throw ValidationError("custom pattern position (" + std::to_string(p.row) + "," +
                                std::to_string(p.col) + ") outside " + std::to_string(n) + "x" +
                                std::to_string(n) + " grid");
        }
      }
      std::set<Position> unique(pattern.begin(), pattern.end());
      out.emplace_back(unique.begin(), unique.end());
    }
  }
  return out;
}

/// A concrete card. Entries are stored row-major.
class Card {
 public:
  Card(CardSpec spec, std::vector<int> grid) : spec_(spec), grid_(std::move(grid)) { validate(); }

  const CardSpec& spec() const noexcept { return spec_; }
  int at(int row, int col) const { return grid_.at(static_cast<std::size_t>(row * spec_.n + col)); }
  std::span<const int> cells() const noexcept { return grid_; }
  bool is_free(Position p) const noexcept {
    return spec_.free_space && p.row == spec_.n / 2 && p.col == spec_.n / 2;
  }

  friend bool operator==(const Card&, const Card&) = default;

 private:
  void validate() const {
    spec_.validate();
    const int n = spec_.n;
    if (grid_.size() != static_cast<std::size_t>(n * n)) {
      throw ValidationError("card grid must have n*n = " + std::to_string(n * n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const int lo = spec_.m * c + 1;
      const int hi = spec_.m * (c + 1);
      std::unordered_set<int> seen;
      for (int r = 0; r < n; ++r) {
        const int v = at(r, c);
        if (v < lo || v > hi) {
          throw ValidationError("entry " + std::to_string(v) + " at column " + std::to_string(c + 1) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        if (!seen.insert(v).second) throw ValidationError("duplicate entry " + std::to_string(v));
      }
    }
  }

  CardSpec spec_;
  std::vector<int> grid_;
};

/// Card with each column an ordered uniform sample of n values from its
/// interval (partial Fisher-Yates). Pure function of (spec, seed).
inline Card generate_card(const CardSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.n;
  const int m = spec.m;
  SplitMix64 rng(seed);
  std::vector<int> grid(static_cast<std::size_t>(n * n));
  std::vector<int> column(static_cast<std::size_t>(m));
  for (int c = 0; c < n; ++c) {
    std::iota(column.begin(), column.end(), m * c + 1);
    for (int r = 0; r < n; ++r) {
      const auto j = r + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - r)));
      std::swap(column[static_cast<std::size_t>(r)], column[static_cast<std::size_t>(j)]);
      grid[static_cast<std::size_t>(r * n + c)] = column[static_cast<std::size_t>(r)];
    }
  }
  return Card(spec, std::move(grid));
}

/// Card i of a multiplayer configuration seeded by `master_seed`.
inline std::vector<Card> generate_cards(const CardSpec& spec, int count, std::uint64_t master_seed) {
  if (count < 1) throw ValidationError("need at least one card");
  std::vector<Card> cards;
  cards.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    cards.push_back(generate_card(spec, stream_seed(master_seed, static_cast<std::uint64_t>(i))));
  }
  return cards;
}

/// One winning pattern as the sorted set of numbers that must be called.
struct Line {
  std::vector<int> numbers;
  int card_index = 0;
  int pattern_index = 0;
  /// Grid squares behind `numbers` (free center excluded); empty for
  /// lines that do not come from a card.
  std::vector<Position> positions;
};

/// Lines over the pool 1..universe_size, unique by number set.
class LineSet {
 public:
  LineSet() = default;

  /// Adopts `lines` in order, dropping any whose number set was already seen.
  LineSet(int universe_size, std::vector<Line> lines) : universe_size_(universe_size) {
    if (universe_size < 1) throw ValidationError("universe size must be positive");
    std::set<std::vector<int>> seen;
    for (auto& line : lines) {
      if (line.numbers.empty()) throw ValidationError("line must not be empty");
      std::sort(line.numbers.begin(), line.numbers.end());
      if (std::adjacent_find(line.numbers.begin(), line.numbers.end()) != line.numbers.end()) {
        throw ValidationError("line numbers must be distinct");
      }
      if (line.numbers.front() < 1 || line.numbers.back() > universe_size) {
        throw ValidationError("line number outside [1, " + std::to_string(universe_size) + "]");
      }
      if (seen.insert(line.numbers).second) lines_.push_back(std::move(line));
    }
  }

  /// Lines given directly as number sets, e.g. for hand-built instances.
  static LineSet from_numbers(int universe_size, const std::vector<std::vector<int>>& number_sets) {
    std::vector<Line> lines;
    for (std::size_t i = 0; i < number_sets.size(); ++i) {
      lines.push_back({number_sets[i], 0, static_cast<int>(i), {}});
    }
    return LineSet(universe_size, std::move(lines));
  }

  int universe_size() const noexcept { return universe_size_; }
  std::span<const Line> lines() const noexcept { return lines_; }
  std::size_t size() const noexcept { return lines_.size(); }
  bool empty() const noexcept { return lines_.empty(); }
  const Line& operator[](std::size_t i) const { return lines_[i]; }

  std::size_t min_line_size() const noexcept {
    std::size_t best = lines_.empty() ? 0 : lines_.front().numbers.size();
    for (const auto& l : lines_) best = std::min(best, l.numbers.size());
    return best;
  }

  /// Sorted distinct numbers appearing in any line.
  std::vector<int> covered_numbers() const {
    std::set<int> all;
    for (const auto& l : lines_) all.insert(l.numbers.begin(), l.numbers.end());
    return {all.begin(), all.end()};
  }

  /// Number sets only, in canonical (sorted) order.
  std::set<std::vector<int>> number_sets() const {
    std::set<std::vector<int>> out;
    for (const auto& l : lines_) out.insert(l.numbers);
    return out;
  }

 private:
  int universe_size_ = 0;
  std::vector<Line> lines_;
};

namespace detail {

inline std::vector<Line> card_lines(const Card& card, int card_index, const PatternFamily& family) {
  const auto patterns = pattern_positions(family, card.spec().n);
  std::vector<Line> lines;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Line line;
    line.card_index = card_index;
    line.pattern_index = static_cast<int>(p);
    for (const auto& pos : patterns[p]) {
      if (card.is_free(pos)) continue;
      line.numbers.push_back(card.at(pos.row, pos.col));
      line.positions.push_back(pos);
    }
    if (line.numbers.empty()) {
      throw ValidationError("pattern " + std::to_string(p) + " consists only of the free space");
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

/// Winning patterns of `family` instantiated on one card.
inline LineSet lines_of(const Card& card, const PatternFamily& family) {
  return LineSet(card.spec().pool_size(), detail::card_lines(card, 0, family));
}

/// Unique lines across all cards (first occurrence keeps its source).
inline LineSet union_lines(std::span<const Card> cards, const PatternFamily& family) {
  if (cards.empty()) throw ValidationError("need at least one card");
  const CardSpec& spec = cards.front().spec();
  std::vector<Line> all;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    if (!(cards[i].spec() == spec)) throw ValidationError("all cards must share the same spec");
    auto lines = detail::card_lines(cards[i], static_cast<int>(i), family);
    std::move(lines.begin(), lines.end(), std::back_inserter(all));
  }
  return LineSet(spec.pool_size(), std::move(all));
}

/// Patterns over bare grid positions, numbered 1..n*n row-major. Gives the
/// same coverage profile as any single card with this spec, since the
/// position -> number map of a card is injective.
inline LineSet geometry_lines(int n, const PatternFamily& family, bool free_space = false) {
  CardSpec spec{n, n, free_space};
  spec.validate();
  std::vector<Line> lines;
  const auto patterns = pattern_positions(family, n);
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Line line;
    line.pattern_index = static_cast<int>(p);
    for (const auto& pos : patterns[p]) {
      if (free_space && pos.row == n / 2 && pos.col == n / 2) continue;
      line.numbers.push_back(pos.row * n + pos.col + 1);
      line.positions.push_back(pos);
    }
    if (line.numbers.empty()) throw ValidationError("pattern consists only of the free space");
    lines.push_back(std::move(line));
  }
  return LineSet(n * n, std::move(lines));
}

}  // namespace bingo
