#pragma once

// File formats: card / multiplayer JSON, profile JSON, stats JSON and the
// distribution CSV.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "card.hpp"
#include "coverage.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "rational.hpp"

namespace bingo::io {

using nlohmann::json;

inline json card_to_json(const Card& card) {
  const int n = card.spec().n;
  json grid = json::array();
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) row.push_back(card.at(r, c));
    grid.push_back(std::move(row));
  }
  return {{"n", n}, {"m", card.spec().m}, {"free_space", card.spec().free_space}, {"grid", std::move(grid)}};
}

inline Card card_from_json(const json& j) {
  try {
    CardSpec spec{j.at("n").get<int>(), j.at("m").get<int>(), j.value("free_space", false)};
    spec.validate();
    const auto& grid = j.at("grid");
    if (!grid.is_array() || grid.size() != static_cast<std::size_t>(spec.n)) {
      throw ValidationError("card grid must have n rows");
    }
    std::vector<int> cells;
    for (const auto& row : grid) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(spec.n)) {
        throw ValidationError("card grid rows must have n entries");
      }
      for (const auto& v : row) cells.push_back(v.get<int>());
    }
    return Card(spec, std::move(cells));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed card JSON: ") + e.what());
  }
}

struct CardDeck {
  std::uint64_t seed = 0;
  std::vector<Card> cards;
};

inline json deck_to_json(const CardDeck& deck) {
  json cards = json::array();
  for (const auto& c : deck.cards) cards.push_back(card_to_json(c));
  return {{"seed", deck.seed}, {"cards", std::move(cards)}};
}

inline CardDeck deck_from_json(const json& j) {
  try {
    CardDeck deck;
    deck.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("cards")) deck.cards.push_back(card_from_json(c));
    if (deck.cards.empty()) throw ValidationError("deck has no cards");
    return deck;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed deck JSON: ") + e.what());
  }
}

/// {"universe": U, "counts": {"j": A[j], ...}}, zero entries omitted.
inline json profile_to_json(const CoverageProfile& profile) {
  json counts = json::object();
  const auto a = profile.counts();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] != 0) counts[std::to_string(j)] = a[j];
  }
  return {{"universe", profile.universe_size()}, {"counts", std::move(counts)}};
}

inline CoverageProfile profile_from_json(const json& j) {
  try {
    const int universe = j.at("universe").get<int>();
    if (universe < 1) throw ValidationError("profile universe must be positive");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(universe) + 1, 0);
    for (const auto& [key, value] : j.at("counts").items()) {
      std::size_t used = 0;
      const int index = std::stoi(key, &used);
      if (used != key.size() || index < 0 || index > universe) throw ValidationError("bad profile index " + key);
      counts[static_cast<std::size_t>(index)] = value.get<std::int64_t>();
    }
    return CoverageProfile(universe, std::move(counts));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed profile JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ValidationError(std::string("malformed profile JSON: ") + e.what());
  }
}

inline json stats_to_json(const TrialStats& stats) {
  return {{"trials", stats.trials},
          {"mean", stats.mean},
          {"variance", stats.sample_variance},
          {"variance_defined", stats.variance_defined},
          {"se", stats.standard_error},
          {"ci95", {stats.ci95_low, stats.ci95_high}},
          {"seed", stats.seed}};
}

/// Decimal plus exact "num/den" form of a rational.
inline json rational_to_json(const Rational& r, int significant = 12) {
  return {{"decimal", to_significant(r, significant)}, {"exact", to_fraction_string(r)}};
}

/// CSV with columns k, cdf, pmf for k = 0..pool, 12 significant digits.
inline void write_distribution_csv(std::ostream& out, const GameDistribution& dist) {
  out << "k,cdf,pmf\n";
  for (int k = 0; k <= dist.pool_size; ++k) {
    const auto i = static_cast<std::size_t>(k);
    out << k << ',' << to_significant(dist.cdf[i], 12) << ',' << to_significant(dist.pmf[i], 12) << '\n';
  }
}

}  // namespace bingo::io
