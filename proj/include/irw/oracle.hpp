#pragma once

#include <array>
#include <cstdint>

#include "irw/local_tests.hpp"
#include "irw/observation_model.hpp"

// Reference computations for the Bernoulli flip model, written independently
// of the calibration code so that tests can compare the two.
namespace irw::oracle {

struct FixedConfidence {
  double p_g = 0.0;
  double p_f = 0.0;
};

/// Exact p_g, p_f of the K-sample fixed test with present Ber(1 - mu) and
/// absent Ber(mu) children. Ties between the children count as failures.
/// Integer binomial coefficients up to K = 64, log-gamma sums in long double
/// beyond.
FixedConfidence exact_fixed_confidence(std::int64_t k, double mu);

struct SprtErrors {
  double false_alarm = 0.0;
  double miss = 0.0;
  /// Expected draws under "absent" and "present".
  double duration_absent = 0.0;
  double duration_present = 0.0;
  /// Absorbing lattice states, in LLR steps of log((1 - mu) / mu).
  std::int64_t upper_state = 0;
  std::int64_t lower_state = 0;
  /// A threshold was not on the lattice and was moved outward to the next
  /// lattice point.
  bool snapped = false;
};

/// Exact absorption probabilities of the SPRT on Ber(1 - mu) vs Ber(mu),
/// from a tridiagonal solve over the transient lattice states.
SprtErrors sprt_exact_errors(double mu, double lower, double upper);

/// Empirical verdict frequencies with binomial standard errors.
struct VerdictFrequencies {
  std::array<std::int64_t, 4> counts{};
  std::int64_t runs = 0;
  std::int64_t truncated = 0;
  double mean_samples = 0.0;

  double frequency(Hypothesis h) const;
  double standard_error(Hypothesis h) const;
};

/// Runs a single-target local test `runs` times at a level-`level` node under
/// a planted hypothesis (H0: no target, H1/H2: target in left/right child).
VerdictFrequencies mc_verdict_distribution(const LocalTestSpec& spec,
                                           const HierarchicalModel& model, int level,
                                           Hypothesis planted, std::int64_t runs,
                                           std::uint64_t seed);

/// Exact binomial tails P(X >= x) and P(X <= x) for X ~ Bin(n, q).
double binomial_upper_tail(std::int64_t n, double q, double x);
double binomial_lower_tail(std::int64_t n, double q, double x);

/// Multiplicative Chernoff bounds for X ~ Bin(n, mu), nu = n mu, 0 < delta <= 1:
/// P(X >= (1 + delta) nu) <= exp(-nu delta^2 / 3) and
/// P(X <= (1 - delta) nu) <= exp(-nu delta^2 / 2).
struct ChernoffCheck {
  double upper_tail = 0.0;
  double upper_bound = 0.0;
  double lower_tail = 0.0;
  double lower_bound = 0.0;

  bool holds() const { return upper_tail <= upper_bound && lower_tail <= lower_bound; }
};

ChernoffCheck chernoff_bounds(std::int64_t n, double mu, double delta);

}  // namespace irw::oracle
