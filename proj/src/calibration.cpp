#include "irw/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "irw/errors.hpp"

namespace irw {
namespace {

std::vector<double> binomial_pmf(std::int64_t n, double q) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  const double log_q = std::log(q);
  const double log_1q = std::log1p(-q);
  const double log_nf = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::int64_t k = 0; k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    const double log_c = log_nf - std::lgamma(kd + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0);
    pmf[static_cast<std::size_t>(k)] = std::exp(log_c + kd * log_q + static_cast<double>(n - k) * log_1q);
  }
  return pmf;
}

// P(count of successes in k draws > k/2) and P(< k/2), i.e. the sign of the
// flip-model SLLR, which is proportional to 2 * count - k.
struct CountSigns {
  double positive = 0.0;
  double negative = 0.0;
};

CountSigns count_signs(const std::vector<double>& pmf, std::int64_t k) {
  CountSigns s;
  for (std::int64_t c = 0; c <= k; ++c) {
    if (2 * c > k) s.positive += pmf[static_cast<std::size_t>(c)];
    if (2 * c < k) s.negative += pmf[static_cast<std::size_t>(c)];
  }
  return s;
}

void require_flip_model(const Distribution& present, const Distribution& absent) {
  if (std::abs(present.param - (1.0 - absent.param)) > 1e-12 || !(present.param > absent.param)) {
    throw UnsupportedPairError("Bernoulli calibration expects the symmetric flip model");
  }
}

FixedTestConfidence bernoulli_confidence(const Distribution& present,
                                         const Distribution& absent, std::int64_t k) {
  require_flip_model(present, absent);
  const auto py = binomial_pmf(k, present.param);
  const auto pz = binomial_pmf(k, absent.param);
  FixedTestConfidence out;
  double z_below = 0.0;  // P(Z < y)
  for (std::int64_t y = 0; y <= k; ++y) {
    if (2 * y > k) out.toward_if_present += py[static_cast<std::size_t>(y)] * z_below;
    z_below += pz[static_cast<std::size_t>(y)];
  }
  const double neg = count_signs(pz, k).negative;
  out.toward_if_absent = neg * neg;
  return out;
}

// Sum of k Exp(rate) draws is Gamma(k, rate). For the exponential LLR
// S = k log(a/b) - (a - b) * sum, S < 0 <=> sum > t* when a > b.
double gamma_sf(std::int64_t k, double rate, double t) {
  if (t <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k), rate * t);
}

double gamma_cdf(std::int64_t k, double rate, double t) {
  if (t <= 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(k), rate * t);
}

double gamma_pdf(std::int64_t k, double rate, double x) {
  if (x <= 0.0) return 0.0;
  return rate * boost::math::gamma_p_derivative(static_cast<double>(k), rate * x);
}

double crossing_point(double a, double b, std::int64_t k) {
  return static_cast<double>(k) * std::log(a / b) / (a - b);
}

// P(statistic < 0) under a Gamma(k, truth_rate) sum.
double exponential_negative(double a, double b, double truth_rate, std::int64_t k) {
  const double t = crossing_point(a, b, k);
  return a > b ? gamma_sf(k, truth_rate, t) : gamma_cdf(k, truth_rate, t);
}

double exponential_positive(double a, double b, double truth_rate, std::int64_t k) {
  const double t = crossing_point(a, b, k);
  return a > b ? gamma_cdf(k, truth_rate, t) : gamma_sf(k, truth_rate, t);
}

FixedTestConfidence exponential_confidence(double a, double b, std::int64_t k) {
  FixedTestConfidence out;
  const double neg = exponential_negative(a, b, b, k);
  out.toward_if_absent = neg * neg;

  const double t = crossing_point(a, b, k);
  const auto kd = static_cast<double>(k);
  const double centre = kd / a;
  const double spread = 14.0 * std::sqrt(kd) / a + 1.0 / a;
  // The target child's sum Y must beat the other child's sum Z and the zero
  // crossing: Y < min(Z, t*) for a > b, Y > max(Z, t*) for a < b.
  auto integrand = [&](double x) {
    const double other = a > b ? gamma_sf(k, b, x) : gamma_cdf(k, b, x);
    return gamma_pdf(k, a, x) * other;
  };
  double lo = std::max(0.0, centre - spread);
  double hi = centre + spread;
  if (a > b) {
    hi = std::min(hi, t);
  } else {
    lo = std::max(lo, t);
  }
  if (hi > lo) {
    out.toward_if_present =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 20, 1e-13);
  }
  return out;
}

// Smallest k in [1, cap] with pred(k). Scans the small range directly; beyond
// it, binary-searches each parity class separately, on which lattice
// confidences are monotone.
template <typename Pred>
std::optional<std::int64_t> minimal_k(Pred&& pred, std::int64_t cap) {
  constexpr std::int64_t kScan = 64;
  for (std::int64_t k = 1; k <= std::min(kScan, cap); ++k) {
    if (pred(k)) return k;
  }
  std::optional<std::int64_t> best;
  for (std::int64_t first : {kScan + 1, kScan + 2}) {
    if (first > cap) continue;
    // Candidates first + 2 i for i in [0, last].
    const std::int64_t last = (cap - first) / 2;
    auto at = [&](std::int64_t i) { return first + 2 * i; };
    std::int64_t lo = 0;  // every index below lo fails
    std::int64_t hi = 0;
    std::int64_t step = 1;
    while (!pred(at(hi))) {
      lo = hi + 1;
      if (hi == last) break;
      hi = std::min(last, hi + step);
      step *= 2;
    }
    if (lo > hi) continue;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (pred(at(mid))) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (!best || at(hi) < *best) best = at(hi);
  }
  return best;
}

}  // namespace

FixedTestConfidence fixed_test_confidence(const HierarchicalModel& model, int level,
                                          std::int64_t k) {
  if (level < 1 || level > model.depth()) {
    throw std::invalid_argument("fixed-test confidence needs an internal level");
  }
  if (k < 1) throw std::invalid_argument("sample size must be at least 1");
  const Distribution present = model.distribution(level - 1, 1);
  const Distribution absent = model.distribution(level - 1, 0);
  if (model.family() == Family::Bernoulli) return bernoulli_confidence(present, absent, k);
  return exponential_confidence(present.param, absent.param, k);
}

std::int64_t calibrate_k(const HierarchicalModel& model, int level, double p,
                         std::int64_t cap) {
  if (!(p > 0.5 && p < 1.0)) throw std::invalid_argument("confidence must lie in (1/2, 1)");
  auto ok = [&](std::int64_t k) {
    const auto c = fixed_test_confidence(model, level, k);
    return c.toward_if_present > p && c.toward_if_absent > p;
  };
  if (auto k = minimal_k(ok, cap)) return *k;
  throw CalibrationError("no fixed sample size up to " + std::to_string(cap) +
                         " reaches confidence " + std::to_string(p) + " at level " +
                         std::to_string(level));
}

ChildSignConfidence child_sign_confidence(const HierarchicalModel& model, int level,
                                          std::int64_t declared, std::int64_t k) {
  if (level < 1 || level > model.depth()) {
    throw std::invalid_argument("child sign confidence needs an internal level");
  }
  if (k < 1) throw std::invalid_argument("sample size must be at least 1");
  const auto pair = model.hypothesis_pair(level - 1, declared);
  ChildSignConfidence out;
  if (model.family() == Family::Bernoulli) {
    require_flip_model(pair.one_more, pair.as_declared);
    out.negative_if_declared = count_signs(binomial_pmf(k, pair.as_declared.param), k).negative;
    out.positive_if_one_more = count_signs(binomial_pmf(k, pair.one_more.param), k).positive;
    return out;
  }
  const double a = pair.one_more.param;
  const double b = pair.as_declared.param;
  out.negative_if_declared = exponential_negative(a, b, b, k);
  out.positive_if_one_more = exponential_positive(a, b, a, k);
  return out;
}

std::int64_t calibrate_multi_k(const HierarchicalModel& model, int level,
                               std::int64_t declared, double p, std::int64_t cap) {
  if (!(p > 0.5 && p < 1.0)) throw std::invalid_argument("confidence must lie in (1/2, 1)");
  const double per_child = std::sqrt(p);
  auto ok = [&](std::int64_t k) {
    const auto c = child_sign_confidence(model, level, declared, k);
    return c.negative_if_declared > per_child && c.positive_if_one_more > per_child;
  };
  if (auto k = minimal_k(ok, cap)) return *k;
  throw CalibrationError("no multi-target sample size up to " + std::to_string(cap) +
                         " at level " + std::to_string(level) + " with " +
                         std::to_string(declared) + " declared");
}

std::int64_t chernoff_sample_bound(double mu, double eta) {
  if (!(mu > 0.0 && mu < 0.5) || !(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("chernoff_sample_bound needs mu in (0,1/2), eta in (0,1)");
  }
  const double gap = 1.0 - 2.0 * mu;
  return static_cast<std::int64_t>(std::ceil(12.0 * (1.0 - mu) * std::log(1.0 / (1.0 - eta)) / (gap * gap)));
}

std::int64_t chernoff_sample_bound(double mu, double eta, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
  const double gap = 1.0 - 2.0 * mu;
  const auto lambda_term = static_cast<std::int64_t>(
      std::ceil(12.0 * mu * std::log(1.0 / (1.0 - lambda)) / (gap * gap)));
  return std::max(chernoff_sample_bound(mu, eta), lambda_term);
}

}  // namespace irw
