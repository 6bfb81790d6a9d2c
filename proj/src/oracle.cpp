#include "irw/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "irw/tree.hpp"

namespace irw::oracle {
namespace {

// Pascal's triangle row, exact in 64 bits for n <= 64.
std::vector<std::uint64_t> binomial_row(std::int64_t n) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    for (std::int64_t j = i; j >= 1; --j) {
      row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    }
  }
  return row;
}

std::vector<long double> pmf(std::int64_t n, long double q) {
  std::vector<long double> out(static_cast<std::size_t>(n) + 1);
  if (n <= 64) {
    const auto row = binomial_row(n);
    for (std::int64_t k = 0; k <= n; ++k) {
      out[static_cast<std::size_t>(k)] = static_cast<long double>(row[static_cast<std::size_t>(k)]) *
                                         std::pow(q, static_cast<long double>(k)) *
                                         std::pow(1.0L - q, static_cast<long double>(n - k));
    }
    return out;
  }
  const long double lq = std::log(q);
  const long double l1q = std::log1p(-q);
  const long double lnf = std::lgamma(static_cast<long double>(n) + 1.0L);
  for (std::int64_t k = 0; k <= n; ++k) {
    const auto kd = static_cast<long double>(k);
    const auto rest = static_cast<long double>(n - k);
    out[static_cast<std::size_t>(k)] =
        std::exp(lnf - std::lgamma(kd + 1.0L) - std::lgamma(rest + 1.0L) + kd * lq + rest * l1q);
  }
  return out;
}

}  // namespace

FixedConfidence exact_fixed_confidence(std::int64_t k, double mu) {
  if (k < 1) throw std::invalid_argument("K must be at least 1");
  if (!(mu > 0.0 && mu < 0.5)) throw std::invalid_argument("mu must lie in (0, 1/2)");
  // A child's SLLR is a positive multiple of 2 * ones - K.
  const auto present = pmf(k, 1.0L - static_cast<long double>(mu));
  const auto absent = pmf(k, static_cast<long double>(mu));
  long double p_g = 0.0L;
  long double absent_below = 0.0L;
  long double absent_negative = 0.0L;
  for (std::int64_t y = 0; y <= k; ++y) {
    const auto i = static_cast<std::size_t>(y);
    if (2 * y > k) p_g += present[i] * absent_below;
    if (2 * y < k) absent_negative += absent[i];
    absent_below += absent[i];
  }
  return {static_cast<double>(p_g), static_cast<double>(absent_negative * absent_negative)};
}

SprtErrors sprt_exact_errors(double mu, double lower, double upper) {
  if (!(mu > 0.0 && mu < 0.5)) throw std::invalid_argument("mu must lie in (0, 1/2)");
  if (!(lower < 0.0 && upper > 0.0)) throw std::invalid_argument("need lower < 0 < upper");
  const double step = std::log((1.0 - mu) / mu);
  constexpr double kTol = 1e-9;
  SprtErrors out;
  const double u = upper / step;
  const double l = lower / step;
  out.upper_state = static_cast<std::int64_t>(std::ceil(u - kTol));
  out.lower_state = static_cast<std::int64_t>(std::floor(l + kTol));
  out.snapped = std::abs(u - std::round(u)) > kTol || std::abs(l - std::round(l)) > kTol;

  // Transient states lower+1 .. upper-1, walk moves +1 with probability up.
  const std::int64_t lo = out.lower_state;
  const std::int64_t n = out.upper_state - lo - 1;
  const auto origin = static_cast<std::size_t>(-lo - 1);

  // Solves x_j = up x_{j+1} + (1 - up) x_{j-1} + rhs_j with fixed boundary
  // values, by the Thomas algorithm.
  auto solve = [&](double up, double at_lower, double at_upper, double rhs) {
    const double down = 1.0 - up;
    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> d(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
      const auto i = static_cast<std::size_t>(j);
      // Row: -down x_{j-1} + x_j - up x_{j+1} = rhs (+ boundary terms).
      double b = 1.0;
      double r = rhs;
      if (j == 0) r += down * at_lower;
      if (j == n - 1) r += up * at_upper;
      const double a = (j == 0) ? 0.0 : -down;
      const double cc = (j == n - 1) ? 0.0 : -up;
      if (j > 0) {
        b -= a * c[i - 1];
        r -= a * d[i - 1];
      }
      c[i] = cc / b;
      d[i] = r / b;
    }
    for (std::int64_t j = n - 2; j >= 0; --j) {
      const auto i = static_cast<std::size_t>(j);
      d[i] -= c[i] * d[i + 1];
    }
    return d[origin];
  };

  out.false_alarm = solve(mu, 0.0, 1.0, 0.0);
  out.miss = solve(1.0 - mu, 1.0, 0.0, 0.0);
  out.duration_absent = solve(mu, 0.0, 0.0, 1.0);
  out.duration_present = solve(1.0 - mu, 0.0, 0.0, 1.0);
  return out;
}

double VerdictFrequencies::frequency(Hypothesis h) const {
  if (runs == 0) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(h)]) / static_cast<double>(runs);
}

double VerdictFrequencies::standard_error(Hypothesis h) const {
  if (runs == 0) return 0.0;
  const double f = frequency(h);
  return std::sqrt(f * (1.0 - f) / static_cast<double>(runs));
}

VerdictFrequencies mc_verdict_distribution(const LocalTestSpec& spec,
                                           const HierarchicalModel& model, int level,
                                           Hypothesis planted, std::int64_t runs,
                                           std::uint64_t seed) {
  if (level < 1 || level > model.depth()) throw std::invalid_argument("level must be internal");
  if (planted == Hypothesis::H3) throw std::invalid_argument("H3 cannot be planted here");
  GroundTruth truth;
  const std::int64_t half = std::int64_t{1} << (level - 1);
  if (planted == Hypothesis::H1) truth.targets = {0};
  if (planted == Hypothesis::H2) truth.targets = {half};
  const NodeChannels channels = single_target_channels(model, NodeId{level, 0}, truth, spec);

  RandomStream rng(seed);
  VerdictFrequencies out;
  out.runs = runs;
  long double total = 0.0L;
  for (std::int64_t r = 0; r < runs; ++r) {
    const LocalVerdict v = run_local_test(spec, channels, rng);
    ++out.counts[static_cast<std::size_t>(v.hypothesis)];
    if (v.truncated) ++out.truncated;
    total += static_cast<long double>(v.samples_used);
  }
  if (runs > 0) out.mean_samples = static_cast<double>(total / static_cast<long double>(runs));
  return out;
}

double binomial_upper_tail(std::int64_t n, double q, double x) {
  const auto p = pmf(n, static_cast<long double>(q));
  long double s = 0.0L;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (static_cast<double>(k) >= x) s += p[static_cast<std::size_t>(k)];
  }
  return static_cast<double>(s);
}

double binomial_lower_tail(std::int64_t n, double q, double x) {
  const auto p = pmf(n, static_cast<long double>(q));
  long double s = 0.0L;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (static_cast<double>(k) <= x) s += p[static_cast<std::size_t>(k)];
  }
  return static_cast<double>(s);
}

ChernoffCheck chernoff_bounds(std::int64_t n, double mu, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const double nu = static_cast<double>(n) * mu;
  ChernoffCheck out;
  out.upper_tail = binomial_upper_tail(n, mu, (1.0 + delta) * nu);
  out.upper_bound = std::exp(-nu * delta * delta / 3.0);
  out.lower_tail = binomial_lower_tail(n, mu, (1.0 - delta) * nu);
  out.lower_bound = std::exp(-nu * delta * delta / 2.0);
  return out;
}

}  // namespace irw::oracle
