#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "card.hpp"
#include "coverage.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace bingo {

// Game length B is the number of calls, drawn without replacement from a
// pool of `pool_size` numbers, until some line is complete. Subset X of lines
// contributes C(k, m(X)) / C(pool, m(X)) to P(B <= k); everything below is
// that sum folded through the coverage profile.

namespace detail {

inline void check_pool(const CoverageProfile& profile, int pool_size) {
  if (pool_size < 1) throw ValidationError("pool size must be positive");
  if (pool_size < profile.max_support()) {
    throw ValidationError("pool size " + std::to_string(pool_size) + " smaller than line coverage " +
                          std::to_string(profile.max_support()));
  }
}

inline void check_k(int k, int lo, int pool_size) {
  if (k < lo || k > pool_size) {
    throw ValidationError("k=" + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(pool_size) + "]");
  }
}

// Integer form of the exact sums. With fall(x, j) = x(x-1)...(x-j+1):
//   C(k,j)/C(N,j)       = fall(k,j) / fall(N,j)
//   C(k-1,j-1)/C(N,j)   = j fall(k-1,j-1) / fall(N,j)
// and fall(N,j) * tail[j] = fall(N,J) for the top support J, so every sum
// shares the denominator fall(N,J) = tail[0].
class ExactKernel {
 public:
  ExactKernel(const CoverageProfile& profile, int pool_size) : profile_(profile), pool_(pool_size) {
    check_pool(profile, pool_size);
    top_ = profile.max_support();
    tail_.assign(static_cast<std::size_t>(top_) + 1, BigInt(1));
    for (int j = top_ - 1; j >= 0; --j) tail_[static_cast<std::size_t>(j)] = tail_[static_cast<std::size_t>(j) + 1] * (pool_ - j);
  }

  const BigInt& denominator() const noexcept { return tail_[0]; }

  BigInt cdf_numerator(int k) const {
    BigInt total = 0;
    BigInt falling = 1;  // fall(k, j)
    for (int j = 1; j <= top_ && j <= k; ++j) {
      falling *= (k - j + 1);
      const auto a = profile_[j];
      if (a != 0) total += a * falling * tail_[static_cast<std::size_t>(j)];
    }
    return total;
  }

  BigInt pmf_numerator(int k) const {
    BigInt total = 0;
    BigInt falling = 1;  // fall(k-1, j-1)
    for (int j = 1; j <= top_ && j <= k; ++j) {
      if (j > 1) falling *= (k - j + 1);
      const auto a = profile_[j];
      if (a != 0) total += BigInt(a) * j * falling * tail_[static_cast<std::size_t>(j)];
    }
    return total;
  }

 private:
  const CoverageProfile& profile_;
  int pool_;
  int top_ = 0;
  std::vector<BigInt> tail_;
};

}  // namespace detail

/// P(B <= k), exact.
inline Rational cdf_at(const CoverageProfile& profile, int pool_size, int k) {
  detail::check_pool(profile, pool_size);
  detail::check_k(k, 0, pool_size);
  detail::ExactKernel kernel(profile, pool_size);
  return Rational(kernel.cdf_numerator(k), kernel.denominator());
}

/// P(B = k), exact, from the direct C(k-1, j-1) form.
inline Rational pmf_at(const CoverageProfile& profile, int pool_size, int k) {
  detail::check_pool(profile, pool_size);
  detail::check_k(k, 1, pool_size);
  detail::ExactKernel kernel(profile, pool_size);
  return Rational(kernel.pmf_numerator(k), kernel.denominator());
}

/// P(B <= k) in double, ratios as telescoping products (no factorials).
inline double cdf_at_fast(const CoverageProfile& profile, int pool_size, int k) {
  detail::check_pool(profile, pool_size);
  detail::check_k(k, 0, pool_size);
  double total = 0;
  double ratio = 1;  // C(k,j)/C(N,j)
  for (int j = 1; j <= profile.max_support() && j <= k; ++j) {
    ratio *= static_cast<double>(k - j + 1) / static_cast<double>(pool_size - j + 1);
    total += static_cast<double>(profile[j]) * ratio;
  }
  return total;
}

inline double pmf_at_fast(const CoverageProfile& profile, int pool_size, int k) {
  detail::check_pool(profile, pool_size);
  detail::check_k(k, 1, pool_size);
  double total = 0;
  double ratio = 1.0 / pool_size;  // C(k-1,j-1)/C(N,j) / j
  for (int j = 1; j <= profile.max_support() && j <= k; ++j) {
    if (j > 1) ratio *= static_cast<double>(k - j + 1) / static_cast<double>(pool_size - j + 1);
    total += static_cast<double>(profile[j]) * j * ratio;
  }
  return total;
}

/// Full exact law of B over k = 0..pool_size.
struct GameDistribution {
  int pool_size = 0;
  std::vector<Rational> cdf;  // index k in [0, pool]
  std::vector<Rational> pmf;  // index k in [0, pool], pmf[0] = 0
  Rational expectation;

  std::vector<double> cdf_values() const {
    std::vector<double> out;
    for (const auto& c : cdf) out.push_back(to_double(c));
    return out;
  }
};

inline GameDistribution game_distribution(const CoverageProfile& profile, int pool_size) {
  detail::ExactKernel kernel(profile, pool_size);
  GameDistribution dist;
  dist.pool_size = pool_size;
  dist.cdf.reserve(static_cast<std::size_t>(pool_size) + 1);
  dist.pmf.reserve(static_cast<std::size_t>(pool_size) + 1);
  BigInt weighted = 0;
  for (int k = 0; k <= pool_size; ++k) {
    dist.cdf.emplace_back(kernel.cdf_numerator(k), kernel.denominator());
    if (k == 0) {
      dist.pmf.emplace_back(0);
      continue;
    }
    const BigInt pmf_num = kernel.pmf_numerator(k);
    weighted += pmf_num * k;
    dist.pmf.emplace_back(pmf_num, kernel.denominator());
  }
  dist.expectation = Rational(weighted, kernel.denominator());
  return dist;
}

/// E[B] = (mn+1)(1-S).
inline Rational expectation_closed_form(const Rational& s, int n, int m) {
  return Rational(n * m + 1) * (1 - s);
}

/// E[B] = sum_k k P(B=k), summed term by term without the hockey-stick
/// collapse, so agreement with the closed form checks that step.
inline Rational expectation_by_sum(const CoverageProfile& profile, int pool_size) {
  detail::ExactKernel kernel(profile, pool_size);
  BigInt weighted = 0;
  for (int k = 1; k <= pool_size; ++k) weighted += kernel.pmf_numerator(k) * k;
  return Rational(weighted, kernel.denominator());
}

/// P(p) = sum_j A[j] p^j: probability that some line is fully marked when
/// each number is marked independently with probability p.
class ReliabilityPolynomial {
 public:
  explicit ReliabilityPolynomial(const CoverageProfile& profile)
      : coefficients_(profile.counts().begin(), profile.counts().end()) {}

  std::span<const std::int64_t> coefficients() const noexcept { return coefficients_; }

  double at(double p) const {
    check(p >= 0.0 && p <= 1.0);
    double acc = 0;
    for (std::size_t j = coefficients_.size(); j-- > 0;) acc = acc * p + static_cast<double>(coefficients_[j]);
    return acc;
  }
  double complement_at(double p) const { return 1.0 - at(p); }

  Rational at(const Rational& p) const {
    check(p >= 0 && p <= 1);
    Rational acc = 0;
    for (std::size_t j = coefficients_.size(); j-- > 0;) acc = acc * p + coefficients_[j];
    return acc;
  }

  /// Antiderivative of P (zero at 0) evaluated at x.
  Rational antiderivative_at(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t j = coefficients_.size(); j-- > 0;) {
      acc = acc * x + Rational(coefficients_[j], static_cast<std::int64_t>(j + 1));
    }
    return acc * x;
  }

  /// Integral of P over [0, 1].
  Rational integral() const { return antiderivative_at(1) - antiderivative_at(0); }

 private:
  static void check(bool ok) {
    if (!ok) throw ValidationError("marking probability must lie in [0, 1]");
  }
  std::vector<std::int64_t> coefficients_;
};

struct ReliabilityValue {
  double p = 0;
  double at_least_one_line = 0;  // P(p)
  double no_line = 1;            // Q(p)
};

inline ReliabilityValue eval_reliability(const CoverageProfile& profile, double p) {
  const double value = ReliabilityPolynomial(profile).at(p);
  return {p, value, 1.0 - value};
}

struct SweepRow {
  int m = 0;
  Rational expectation;
};

/// E[B] over m in [m_min, m_max] from one profile (S does not depend on m).
inline std::vector<SweepRow> sweep_expectation(const CoverageProfile& profile, int n, int m_min, int m_max) {
  if (m_min < n) throw ValidationError("sweep needs m_min >= n");
  if (m_max < m_min) throw ValidationError("sweep needs m_max >= m_min");
  const Rational s = s_value(profile);
  std::vector<SweepRow> rows;
  for (int m = m_min; m <= m_max; ++m) rows.push_back({m, expectation_closed_form(s, n, m)});
  return rows;
}

inline std::vector<SweepRow> sweep_expectation(int n, const PatternFamily& family, int m_min, int m_max,
                                               bool free_space = false, unsigned workers = 1) {
  return sweep_expectation(coverage_profile(geometry_lines(n, family, free_space), workers), n, m_min, m_max);
}

/// Slope and intercept of an exactly affine sweep; throws std::logic_error
/// if any second difference is non-zero.
struct AffineFit {
  Rational slope;
  Rational intercept;
};

inline AffineFit fit_affine(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw ValidationError("empty sweep");
  if (rows.size() == 1) return {0, rows.front().expectation};
  const Rational slope = (rows[1].expectation - rows[0].expectation) / (rows[1].m - rows[0].m);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const Rational second = rows[i].expectation - 2 * rows[i - 1].expectation + rows[i - 2].expectation;
    if (second != 0) throw std::logic_error("sweep is not affine at m=" + std::to_string(rows[i].m));
  }
  return {slope, rows[0].expectation - slope * rows[0].m};
}

}  // namespace bingo
