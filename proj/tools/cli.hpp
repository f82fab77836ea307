#pragma once

// Command implementations for the `bingo` tool. Kept in a header so tests
// can drive the commands without spawning processes.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bingo/bingo.hpp"
#include "bingo/io.hpp"

namespace bingo::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCapacity = 2, kInternal = 3 };

struct CommonOptions {
  int n = 5;
  int m = 15;
  std::string family = "lines";
  bool free_space = false;
  unsigned workers = 1;
  std::size_t limit = kDefaultEnumerationLimit;
  std::string out;
};

inline unsigned default_workers() {
  if (const char* env = std::getenv("BINGO_WORKERS")) {
    try {
      const int value = std::stoi(env);
      if (value >= 1) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

inline PatternFamily parse_family(const std::string& name) {
  if (name == "lines") return StandardLines{};
  if (name == "corners") return FourCorners{};
  throw ValidationError("unknown family '" + name + "' (expected lines or corners)");
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << content;
}

/// Writes to `out_path`, or to `stdout_stream` when the path is empty.
inline void emit(const std::string& out_path, const std::string& content, std::ostream& stdout_stream) {
  if (out_path.empty()) stdout_stream << content;
  else write_file(out_path, content);
}

inline int run_exact(const CommonOptions& opt, std::ostream& out) {
  CardSpec{opt.n, opt.m, opt.free_space}.validate();
  const auto lines = geometry_lines(opt.n, parse_family(opt.family), opt.free_space);
  const auto profile = coverage_profile(lines, opt.workers, opt.limit);
  const int pool = opt.n * opt.m;
  const Rational s = s_value(profile);
  const auto dist = game_distribution(profile, pool);
  const Rational closed = expectation_closed_form(s, opt.n, opt.m);

  io::json summary = {
      {"n", opt.n},
      {"m", opt.m},
      {"family", opt.family},
      {"free_space", opt.free_space},
      {"lines", lines.size()},
      {"S", {{"decimal", to_fixed(s, 30)}, {"exact", to_fraction_string(s)}}},
      {"one_minus_S", {{"decimal", to_fixed(1 - s, 30)}, {"exact", to_fraction_string(1 - s)}}},
      {"expectation_closed_form", io::rational_to_json(closed)},
      {"expectation_by_sum", io::rational_to_json(dist.expectation)},
      {"identity_holds", closed == dist.expectation},
  };
  if (closed != dist.expectation) throw std::logic_error("closed form and summed expectation disagree");

  std::ostringstream csv;
  io::write_distribution_csv(csv, dist);
  const std::filesystem::path dir = opt.out.empty() ? std::filesystem::path(".") : std::filesystem::path(opt.out);
  write_file(dir / "profile.json", io::profile_to_json(profile).dump(2) + "\n");
  write_file(dir / "distribution.csv", csv.str());
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << summary.dump(2) << "\n";
  return kOk;
}

inline int run_sweep(const CommonOptions& opt, int m_min, int m_max, std::ostream& out) {
  CardSpec{opt.n, m_min, opt.free_space}.validate();
  const auto profile = coverage_profile(geometry_lines(opt.n, parse_family(opt.family), opt.free_space),
                                        opt.workers, opt.limit);
  const auto rows = sweep_expectation(profile, opt.n, m_min, m_max);
  const AffineFit fit = fit_affine(rows);
  const Rational one_minus_s = 1 - s_value(profile);
  const Rational slope = one_minus_s * opt.n;
  if (rows.size() > 1 && fit.slope != slope) throw std::logic_error("sweep slope differs from n(1-S)");

  std::ostringstream csv;
  csv << "m,expectation,slope_check\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational step = i == 0 ? slope : rows[i].expectation - rows[i - 1].expectation;
    csv << rows[i].m << ',' << to_significant(rows[i].expectation) << ',' << to_significant(step) << '\n';
  }
  csv << "# slope=" << to_significant(slope) << " (" << to_fraction_string(slope) << ")\n";
  csv << "# intercept=" << to_significant(one_minus_s) << " (" << to_fraction_string(one_minus_s) << ")\n";
  csv << "# affine=true\n";
  emit(opt.out, csv.str(), out);
  return kOk;
}

struct MultiplayerOptions {
  int players = 2;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100'000;
  std::string mode = "validate";
};

inline int run_multiplayer(const CommonOptions& opt, const MultiplayerOptions& mp, std::ostream& out) {
  if (mp.mode != "exact" && mp.mode != "simulate" && mp.mode != "validate") {
    throw ValidationError("mode must be exact, simulate or validate");
  }
  if (mp.players < 1) throw ValidationError("--players must be >= 1");
  if (mp.trials < 1) throw ValidationError("--trials must be >= 1");
  const CardSpec spec{opt.n, opt.m, opt.free_space};
  spec.validate();
  const PatternFamily family = parse_family(opt.family);
  io::CardDeck deck{mp.seed, generate_cards(spec, mp.players, mp.seed)};
  const auto lines = union_lines(deck.cards, family);

  const std::filesystem::path dir = opt.out.empty() ? std::filesystem::path(".") : std::filesystem::path(opt.out);
  write_file(dir / "cards.json", io::deck_to_json(deck).dump(2) + "\n");

  io::json report = {{"n", opt.n},
                     {"m", opt.m},
                     {"players", mp.players},
                     {"seed", mp.seed},
                     {"family", opt.family},
                     {"free_space", opt.free_space},
                     {"mode", mp.mode},
                     {"unique_lines", lines.size()}};

  std::optional<Rational> exact;
  if (mp.mode != "simulate") {
    if (lines.size() > opt.limit) {
      throw CapacityError(std::to_string(lines.size()) + " unique lines exceed the exact enumeration limit of " +
                          std::to_string(opt.limit) + "; rerun with --mode simulate");
    }
    const auto profile = coverage_profile(lines, opt.workers, opt.limit);
    const Rational s = s_value(profile);
    exact = expectation_closed_form(s, opt.n, opt.m);
    report["S"] = io::rational_to_json(s);
    report["expectation"] = io::rational_to_json(*exact);
  }
  if (mp.mode != "exact") {
    const auto stats = run_trials(lines, SimConfig{mp.trials, mp.seed, opt.workers});
    report["simulation"] = io::stats_to_json(stats);
    if (exact) {
      const double expected = to_double(*exact);
      const double error = std::abs(stats.mean - expected);
      report["relative_error"] = error / expected;
      report["error_in_se"] = stats.standard_error > 0 ? error / stats.standard_error : 0.0;
      report["within_4se"] = error <= 4 * stats.standard_error;
    }
  }
  write_file(dir / "report.json", report.dump(2) + "\n");
  out << report.dump(2) << "\n";
  return kOk;
}

inline int run_reliability(const CommonOptions& opt, int points, std::ostream& out) {
  CardSpec{opt.n, opt.n, opt.free_space}.validate();
  if (points < 2) throw ValidationError("--points must be >= 2");
  const auto profile = coverage_profile(geometry_lines(opt.n, parse_family(opt.family), opt.free_space),
                                        opt.workers, opt.limit);
  const ReliabilityPolynomial poly(profile);
  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "p,P,Q\n";
  const double step = 1.0 / (points - 1);
  double integral = 0;
  double previous_q = 0;
  for (int i = 0; i < points; ++i) {
    const double p = i == points - 1 ? 1.0 : i * step;
    const double value = poly.at(p);
    const double q = 1.0 - value;
    csv << p << ',' << value << ',' << q << '\n';
    if (i > 0) integral += 0.5 * step * (previous_q + q);
    previous_q = q;
  }
  const Rational exact = 1 - s_value(profile);
  csv << "# trapezoid_integral_Q=" << integral << "\n";
  csv << "# exact_one_minus_S=" << to_significant(exact) << " (" << to_fraction_string(exact) << ")\n";
  csv << "# difference=" << (integral - to_double(exact)) << "\n";
  emit(opt.out, csv.str(), out);
  return kOk;
}

/// Parses `args` (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and simulated game-length analysis for generalized (n,m) bingo"};
  app.require_subcommand(1);

  CommonOptions opt;
  opt.workers = default_workers();
  MultiplayerOptions mp;
  int m_min = 0;
  int m_max = 0;
  int points = 10001;

  auto add_common = [&](CLI::App* cmd, bool with_m) {
    cmd->add_option("--n", opt.n, "card side length (odd, >= 3)")->required();
    if (with_m) cmd->add_option("--m", opt.m, "values per column (>= n)")->required();
    cmd->add_option("--family", opt.family, "winning patterns: lines or corners")->capture_default_str();
    cmd->add_flag("--free-space", opt.free_space, "pre-mark the center square");
    cmd->add_option("--workers", opt.workers, "worker threads (default $BINGO_WORKERS or core count)");
    cmd->add_option("--limit", opt.limit, "exact enumeration cap on unique lines")->capture_default_str();
  };

  auto* exact = app.add_subcommand("exact", "exact profile, distribution and expectation for one card");
  add_common(exact, true);
  exact->add_option("--out", opt.out, "output directory (default .)");

  auto* sweep = app.add_subcommand("sweep", "E[B] over a range of m");
  add_common(sweep, false);
  sweep->add_option("--m-min", m_min, "first m")->required();
  sweep->add_option("--m-max", m_max, "last m")->required();
  sweep->add_option("--out", opt.out, "CSV file (default stdout)");

  auto* multi = app.add_subcommand("multiplayer", "seeded multiplayer cards: exact, simulated or both");
  add_common(multi, true);
  multi->add_option("--players", mp.players, "number of cards")->capture_default_str();
  multi->add_option("--seed", mp.seed, "master seed for cards and trials")->capture_default_str();
  multi->add_option("--trials", mp.trials, "Monte Carlo games")->capture_default_str();
  multi->add_option("--mode", mp.mode, "exact, simulate or validate")->capture_default_str();
  multi->add_option("--out", opt.out, "output directory (default .)");

  auto* reliability = app.add_subcommand("reliability", "P(p) and Q(p) on a grid of marking probabilities");
  add_common(reliability, false);
  reliability->add_option("--points", points, "grid points on [0,1]")->capture_default_str();
  reliability->add_option("--out", opt.out, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*exact) return run_exact(opt, out);
    if (*sweep) return run_sweep(opt, m_min, m_max, out);
    if (*multi) return run_multiplayer(opt, mp, out);
    if (*reliability) return run_reliability(opt, points, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace bingo::cli
