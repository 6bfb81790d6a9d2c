#pragma once

#include <cstdint>

#include "irw/observation_model.hpp"

namespace irw {

/// Probabilities that one fixed-sample test at a level-`level` node moves the
/// walk toward the target: when the node contains it (p_g, the target child's
/// SLLR beats both the other child's and zero) and when it does not (p_f,
/// both SLLRs negative). Ties count as failures.
struct FixedTestConfidence {
  double toward_if_present = 0.0;
  double toward_if_absent = 0.0;
};

/// Exact for Bernoulli (binomial sums), quadrature over Gamma laws for the
/// exponential family.
FixedTestConfidence fixed_test_confidence(const HierarchicalModel& model, int level,
                                          std::int64_t k);

/// Smallest K with both fixed-test confidences above p. Throws
/// CalibrationError if none exists up to `cap`.
std::int64_t calibrate_k(const HierarchicalModel& model, int level, double p,
                         std::int64_t cap = 10'000'000);

/// Per-child sign probabilities of the multi-target statistic at a child of a
/// level-`level` node holding `declared` declarations: negative when it holds
/// no undeclared target, positive when it holds exactly one more.
struct ChildSignConfidence {
  double negative_if_declared = 0.0;
  double positive_if_one_more = 0.0;
};

ChildSignConfidence child_sign_confidence(const HierarchicalModel& model, int level,
                                          std::int64_t declared, std::int64_t k);

/// Smallest K_l^(d) with both child sign probabilities above sqrt(p), so every
/// two-child sign pattern is recognised with probability above p.
std::int64_t calibrate_multi_k(const HierarchicalModel& model, int level,
                               std::int64_t declared, double p,
                               std::int64_t cap = 10'000'000);

/// Closed-form Chernoff-bound sample size for the Bernoulli flip model,
/// ceil(12 (1 - mu) log(1/(1 - eta)) / (1 - 2 mu)^2).
std::int64_t chernoff_sample_bound(double mu, double eta);

/// Max of the eta term and the matching lambda term
/// 12 mu log(1/(1 - lambda)) / (1 - 2 mu)^2.
std::int64_t chernoff_sample_bound(double mu, double eta, double lambda);

}  // namespace irw
