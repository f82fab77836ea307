#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "bingo/card.hpp"

using namespace bingo;

namespace {

void check_column_intervals(const Card& card) {
  const auto& spec = card.spec();
  for (int c = 0; c < spec.n; ++c) {
    std::set<int> seen;
    for (int r = 0; r < spec.n; ++r) {
      const int v = card.at(r, c);
      REQUIRE(v >= spec.m * c + 1);
      REQUIRE(v <= spec.m * (c + 1));
      seen.insert(v);
    }
    REQUIRE(seen.size() == static_cast<std::size_t>(spec.n));
  }
}

}  // namespace

TEST_CASE("card spec validation", "[core]") {
  CHECK_THROWS_AS(generate_card(CardSpec{4, 10, false}, 1), ValidationError);
  CHECK_THROWS_AS(generate_card(CardSpec{5, 4, false}, 1), ValidationError);
  CHECK_THROWS_AS(generate_card(CardSpec{1, 4, false}, 1), ValidationError);
  CHECK_NOTHROW(generate_card(CardSpec{3, 3, false}, 1));
  CHECK(CardSpec{5, 15, false}.pool_size() == 75);
}

TEST_CASE("m = n uses every value of each column interval", "[core]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Card card = generate_card(CardSpec{3, 3, false}, seed);
    for (int c = 0; c < 3; ++c) {
      std::vector<int> column;
      for (int r = 0; r < 3; ++r) column.push_back(card.at(r, c));
      std::sort(column.begin(), column.end());
      CHECK(column == std::vector<int>{3 * c + 1, 3 * c + 2, 3 * c + 3});
    }
  }
}

TEST_CASE("classic 5x15 card column ranges", "[core]") {
  const Card card = generate_card(CardSpec{5, 15, false}, 2024);
  for (int r = 0; r < 5; ++r) {
    CHECK(card.at(r, 0) >= 1);
    CHECK(card.at(r, 0) <= 15);
    CHECK(card.at(r, 1) >= 16);
    CHECK(card.at(r, 1) <= 30);
  }
}

TEST_CASE("generated cards respect intervals (property)", "[core][property]") {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + 2 * static_cast<int>(rng.below(4));
    const int m = n + static_cast<int>(rng.below(20));
    const auto seed = rng();
    const Card card = generate_card(CardSpec{n, m, false}, seed);
    check_column_intervals(card);
    CHECK(generate_card(CardSpec{n, m, false}, seed) == card);
  }
}

TEST_CASE("distinct seeds give distinct cards", "[core]") {
  const Card a = generate_card(CardSpec{5, 15, false}, 1);
  const Card b = generate_card(CardSpec{5, 15, false}, 2);
  CHECK_FALSE(a == b);
}

TEST_CASE("card constructor rejects bad grids", "[core]") {
  CHECK_THROWS_AS(Card(CardSpec{3, 3, false}, {1, 4, 7, 2, 5, 8, 3, 6}), ValidationError);
  CHECK_THROWS_AS(Card(CardSpec{3, 3, false}, {1, 4, 7, 1, 5, 8, 3, 6, 9}), ValidationError);
  CHECK_THROWS_AS(Card(CardSpec{3, 3, false}, {4, 1, 7, 2, 5, 8, 3, 6, 9}), ValidationError);
  CHECK_NOTHROW(Card(CardSpec{3, 3, false}, {1, 4, 7, 2, 5, 8, 3, 6, 9}));
}

TEST_CASE("standard lines of a 3x3 card", "[core]") {
  const LineSet lines = lines_of(generate_card(CardSpec{3, 3, false}, 5), StandardLines{});
  CHECK(lines.size() == 8);
  CHECK(lines.universe_size() == 9);
  for (const auto& line : lines.lines()) CHECK(line.numbers.size() == 3);
}

TEST_CASE("four corners of a 5x5 card", "[core]") {
  const Card card = generate_card(CardSpec{5, 15, false}, 5);
  const LineSet lines = lines_of(card, FourCorners{});
  REQUIRE(lines.size() == 1);
  std::vector<int> expected{card.at(0, 0), card.at(0, 4), card.at(4, 0), card.at(4, 4)};
  std::sort(expected.begin(), expected.end());
  CHECK(lines[0].numbers == expected);
}

TEST_CASE("free space drops the center from its lines", "[core]") {
  const Card card = generate_card(CardSpec{5, 15, true}, 9);
  const LineSet lines = lines_of(card, StandardLines{});
  REQUIRE(lines.size() == 12);
  int short_lines = 0;
  for (const auto& line : lines.lines()) {
    if (line.numbers.size() == 4) {
      ++short_lines;
      CHECK(std::find(line.numbers.begin(), line.numbers.end(), card.at(2, 2)) == line.numbers.end());
    } else {
      CHECK(line.numbers.size() == 5);
    }
  }
  CHECK(short_lines == 4);
}

TEST_CASE("custom patterns", "[core]") {
  const Card card = generate_card(CardSpec{3, 3, false}, 1);
  const CustomPatterns good{{{{0, 0}, {1, 1}}, {{2, 2}}}};
  const LineSet lines = lines_of(card, good);
  CHECK(lines.size() == 2);
  CHECK_THROWS_AS(lines_of(card, CustomPatterns{{{{0, 3}}}}), ValidationError);
  CHECK_THROWS_AS(lines_of(card, CustomPatterns{{{}}}), ValidationError);
  const Card free_card = generate_card(CardSpec{3, 3, true}, 1);
  CHECK_THROWS_AS(lines_of(free_card, CustomPatterns{{{{1, 1}}}}), ValidationError);
}

TEST_CASE("union of identical cards collapses", "[core]") {
  const Card card = generate_card(CardSpec{5, 15, false}, 3);
  const std::vector<Card> cards{card, card};
  CHECK(union_lines(cards, StandardLines{}).size() == 12);
}

TEST_CASE("union of cards without shared lines keeps all", "[core]") {
  // Rows, columns and diagonals of these two cards share no number set.
  const Card a(CardSpec{3, 4, false}, {1, 5, 9, 2, 6, 10, 3, 7, 11});
  const Card b(CardSpec{3, 4, false}, {4, 8, 12, 2, 5, 11, 1, 7, 10});
  const std::vector<Card> cards{a, b};
  CHECK(union_lines(cards, StandardLines{}).size() == 16);
}

TEST_CASE("union of seeded 3x5 pair", "[core]") {
  // 16 from comparing the number sets of both generated grids directly.
  const auto cards = generate_cards(CardSpec{3, 5, false}, 2, 42);
  const LineSet lines = union_lines(cards, StandardLines{});
  CHECK(lines.size() == 16);

  std::set<std::vector<int>> direct;
  for (const auto& c : cards) {
    auto add = [&](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      direct.insert(v);
    };
    for (int i = 0; i < 3; ++i) {
      add({c.at(i, 0), c.at(i, 1), c.at(i, 2)});
      add({c.at(0, i), c.at(1, i), c.at(2, i)});
    }
    add({c.at(0, 0), c.at(1, 1), c.at(2, 2)});
    add({c.at(0, 2), c.at(1, 1), c.at(2, 0)});
  }
  CHECK(lines.number_sets() == direct);
}

TEST_CASE("union rejects mixed specs", "[core]") {
  const std::vector<Card> cards{generate_card(CardSpec{3, 3, false}, 1), generate_card(CardSpec{3, 5, false}, 1)};
  CHECK_THROWS_AS(union_lines(cards, StandardLines{}), ValidationError);
  CHECK_THROWS_AS(union_lines(std::span<const Card>{}, StandardLines{}), ValidationError);
}

TEST_CASE("dedup is idempotent and order-invariant (property)", "[core][property]") {
  SplitMix64 rng(77);
  for (int i = 0; i < 50; ++i) {
    const auto seed = rng();
    // m = n = 3 makes shared lines common.
    auto cards = generate_cards(CardSpec{3, 3, false}, 3, seed);
    const LineSet once = union_lines(cards, StandardLines{});
    for (std::size_t a = 0; a < once.size(); ++a) {
      for (std::size_t b = a + 1; b < once.size(); ++b) REQUIRE(once[a].numbers != once[b].numbers);
    }
    std::vector<Line> again(once.lines().begin(), once.lines().end());
    const LineSet twice(once.universe_size(), again);
    CHECK(twice.number_sets() == once.number_sets());
    CHECK(twice.size() == once.size());

    std::reverse(cards.begin(), cards.end());
    CHECK(union_lines(cards, StandardLines{}).number_sets() == once.number_sets());
    CHECK(once.size() <= 3 * 8);
  }
}

TEST_CASE("line set validation", "[core]") {
  CHECK_THROWS_AS(LineSet::from_numbers(5, {{}}), ValidationError);
  CHECK_THROWS_AS(LineSet::from_numbers(5, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(LineSet::from_numbers(5, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(LineSet::from_numbers(5, {{6}}), ValidationError);
  const auto lines = LineSet::from_numbers(5, {{3, 1}, {1, 3}, {2}});
  CHECK(lines.size() == 2);
  CHECK(lines[0].numbers == std::vector<int>{1, 3});
  CHECK(lines.min_line_size() == 1);
}

TEST_CASE("geometry lines match positions", "[core]") {
  const LineSet lines = geometry_lines(3, StandardLines{});
  REQUIRE(lines.size() == 8);
  CHECK(lines[0].numbers == std::vector<int>{1, 2, 3});
  CHECK(lines[3].numbers == std::vector<int>{1, 4, 7});
  CHECK(lines[6].numbers == std::vector<int>{1, 5, 9});
  CHECK(lines[7].numbers == std::vector<int>{3, 5, 7});
  const LineSet free_lines = geometry_lines(3, StandardLines{}, true);
  CHECK(free_lines[1].numbers == std::vector<int>{4, 6});
}
