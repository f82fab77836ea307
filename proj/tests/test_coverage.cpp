#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "bingo/coverage.hpp"
#include "generators.hpp"

using namespace bingo;

namespace {

// Reference profile: every non-empty subset as a bitmask, union rebuilt
// from scratch each time.
std::vector<std::int64_t> naive_profile(const LineSet& lines) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(lines.universe_size()) + 1, 0);
  const std::size_t count = lines.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
    std::set<int> covered;
    int chosen = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if ((mask >> i) & 1U) {
        ++chosen;
        covered.insert(lines[i].numbers.begin(), lines[i].numbers.end());
      }
    }
    counts[covered.size()] += (chosen % 2 == 1) ? 1 : -1;
  }
  return counts;
}

Rational naive_s(const std::vector<std::int64_t>& counts) {
  Rational s = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) s += Rational(counts[j]) / Rational(j + 1);
  return s;
}

}  // namespace

TEST_CASE("single line profile", "[ie]") {
  const auto profile = coverage_profile(LineSet::from_numbers(10, {{2, 4, 6, 8}}));
  for (int j = 0; j <= 10; ++j) CHECK(profile[j] == (j == 4 ? 1 : 0));
  CHECK(s_value(profile) == Rational(1, 5));
}

TEST_CASE("two disjoint lines", "[ie]") {
  const auto profile = coverage_profile(LineSet::from_numbers(10, {{1, 2}, {5, 6, 7}}));
  CHECK(profile[2] == 1);
  CHECK(profile[3] == 1);
  CHECK(profile[5] == -1);
  CHECK(profile.total() == 1);

  const auto equal = coverage_profile(LineSet::from_numbers(10, {{1, 2}, {5, 6}}));
  CHECK(equal[2] == 2);
  CHECK(equal[4] == -1);
}

TEST_CASE("single line of size n gives S = 1/(n+1)", "[ie]") {
  for (int n : {3, 5, 7}) {
    std::vector<int> line;
    for (int i = 1; i <= n; ++i) line.push_back(i);
    CHECK(s_value(coverage_profile(LineSet::from_numbers(n * n, {line}))) == Rational(1, n + 1));
  }
}

TEST_CASE("tabulated S values need the free center square", "[ie]") {
  // Table values 0.61428571 (n=3), 0.45567666 (n=5), 0.37493088 (n=7).
  CHECK(to_fixed(s_value(coverage_profile(geometry_lines(3, StandardLines{}, true))), 8) == "0.61428571");
  CHECK(to_fixed(s_value(coverage_profile(geometry_lines(5, StandardLines{}, true))), 8) == "0.45567666");
  CHECK(to_fixed(s_value(coverage_profile(geometry_lines(7, StandardLines{}, true))), 8) == "0.37493088");
  CHECK(s_value(coverage_profile(geometry_lines(3, StandardLines{}, true))) == Rational(43, 70));

  // Without it the n=3 value differs; exact value from the naive enumerator.
  const auto plain = geometry_lines(3, StandardLines{}, false);
  CHECK(s_value(coverage_profile(plain)) == naive_s(naive_profile(plain)));
  CHECK(s_value(coverage_profile(plain)) == Rational(659, 1260));
}

TEST_CASE("engine matches naive enumeration (property)", "[ie][property]") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int universe = 4 + static_cast<int>(rng.below(20));
    const int count = 1 + static_cast<int>(rng.below(10));
    const LineSet lines = testing::random_number_lines(rng(), universe, count, std::min(universe, 6));
    const auto profile = coverage_profile(lines);
    const auto expected = naive_profile(lines);
    REQUIRE(std::vector<std::int64_t>(profile.counts().begin(), profile.counts().end()) == expected);
  }
  // Card-derived instances as well.
  for (int n : {3, 5}) {
    for (bool free_space : {false, true}) {
      const auto lines = lines_of(generate_card(CardSpec{n, n + 2, free_space}, 8), StandardLines{});
      const auto profile = coverage_profile(lines);
      CHECK(std::vector<std::int64_t>(profile.counts().begin(), profile.counts().end()) == naive_profile(lines));
    }
  }
}

TEST_CASE("profile sums to one and stays in its window (property)", "[ie][property]") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const LineSet lines = testing::random_card_lines(seed);
    const auto profile = coverage_profile(lines);
    REQUIRE(profile.total() == 1);
    CHECK(profile.min_support() >= static_cast<int>(lines.min_line_size()));
    CHECK(profile.max_support() <= static_cast<int>(lines.covered_numbers().size()));
  }
}

TEST_CASE("profile is invariant under line order (property)", "[ie][property]") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const LineSet lines = testing::random_card_lines(rng());
    std::vector<Line> shuffled(lines.lines().begin(), lines.lines().end());
    shuffle(std::span<Line>(shuffled), rng);
    CHECK(coverage_profile(LineSet(lines.universe_size(), shuffled)) == coverage_profile(lines));
  }
}

TEST_CASE("parallel enumeration is deterministic", "[ie][parallel]") {
  const auto cards = generate_cards(CardSpec{5, 7, false}, 2, 31);
  const auto lines = union_lines(cards, StandardLines{});
  INFO("lines: " << lines.size());
  const auto one = coverage_profile(lines, 1, 28);
  CHECK(coverage_profile(lines, 2, 28) == one);
  CHECK(coverage_profile(lines, 3, 28) == one);
  CHECK(coverage_profile(lines, 8, 28) == one);
  // More workers than lines.
  const auto small = LineSet::from_numbers(6, {{1, 2}, {2, 3}});
  CHECK(coverage_profile(small, 16) == coverage_profile(small, 1));
}

TEST_CASE("wide universes use wider bitsets", "[ie]") {
  for (int max_size : {40, 100, 200, 300}) {
    const LineSet lines = testing::random_number_lines(static_cast<std::uint64_t>(max_size), 2500, 6, max_size);
    const auto profile = coverage_profile(lines);
    CHECK(std::vector<std::int64_t>(profile.counts().begin(), profile.counts().end()) == naive_profile(lines));
  }
  std::vector<int> huge(2100);
  for (int i = 0; i < 2100; ++i) huge[static_cast<std::size_t>(i)] = i + 1;
  CHECK_THROWS_AS(coverage_profile(LineSet::from_numbers(2100, {huge})), CapacityError);
}

TEST_CASE("enumeration limits and errors", "[ie]") {
  CHECK_THROWS_AS(coverage_profile(LineSet()), ValidationError);
  const auto lines = geometry_lines(5, StandardLines{});
  CHECK_THROWS_AS(coverage_profile(lines, 1, 11), CapacityError);
  CHECK_NOTHROW(coverage_profile(lines, 1, 12));
  CHECK_THROWS_AS(coverage_profile(lines, 1, 63), ValidationError);
  CHECK_THROWS_AS(coverage_profile(lines, 1, 0), ValidationError);
  const auto many = generate_cards(CardSpec{5, 15, false}, 3, 1);
  try {
    coverage_profile(union_lines(many, StandardLines{}));
    FAIL("expected capacity error");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
  }
}

TEST_CASE("fast S agrees with exact S", "[ie]") {
  for (int n : {3, 5, 7, 9}) {
    for (bool free_space : {false, true}) {
      const auto profile = coverage_profile(geometry_lines(n, StandardLines{}, free_space));
      const double exact = to_double(s_value(profile));
      CHECK(std::abs(s_value_fast(profile) - exact) <= 1e-9 * std::abs(exact));
    }
  }
}

TEST_CASE("profile constructor validation", "[ie]") {
  CHECK_THROWS_AS(CoverageProfile(0, {0}), ValidationError);
  CHECK_THROWS_AS(CoverageProfile(3, {0, 1}), ValidationError);
  CHECK_THROWS_AS(CoverageProfile(3, {1, 0, 0, 0}), ValidationError);
}
