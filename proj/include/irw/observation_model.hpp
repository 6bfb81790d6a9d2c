#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "irw/rng.hpp"

namespace irw {

enum class Family { Bernoulli, Exponential };

std::string_view to_string(Family family);

/// A scalar observation distribution. `param` is the success probability for
/// Bernoulli and the rate for Exponential. Bernoulli draws are 0.0 / 1.0.
struct Distribution {
  Family family = Family::Bernoulli;
  double param = 0.5;

  static Distribution bernoulli(double success);
  static Distribution exponential(double rate);

  double density(double y) const;
  double mean() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Log-likelihood ratio of two same-family distributions. For both families
/// the per-sample LLR is affine in the observation, which is what this stores.
class LogLikelihoodRatio {
 public:
  LogLikelihoodRatio() = default;
  /// Throws UnsupportedPairError for mixed families and InfiniteLlrError if
  /// some point of the common support has zero density under one side only.
  LogLikelihoodRatio(const Distribution& present, const Distribution& absent);

  double operator()(double y) const { return total(1, y); }

  /// SLLR of n observations summing to `sum`. For mirrored Bernoulli pairs
  /// (present = 1 - absent) this is one rounding of an integer multiple of the
  /// step, so equal net counts compare equal and a zero net count is exactly 0.
  double total(std::int64_t n, double sum) const {
    if (mirrored_) return slope_ * 0.5 * (2.0 * sum - static_cast<double>(n));
    return intercept_ * static_cast<double>(n) + slope_ * sum;
  }

  double intercept() const { return intercept_; }
  double slope() const { return slope_; }

 private:
  double intercept_ = 0.0;
  double slope_ = 0.0;
  bool mirrored_ = false;
};

/// Running SLLR held as (draw count, observation sum) rather than a running
/// float sum, so that the value depends only on the statistics.
class SllrAccumulator {
 public:
  SllrAccumulator() = default;
  explicit SllrAccumulator(const LogLikelihoodRatio& llr) : llr_(llr) {}

  void add(double y) {
    ++count_;
    sum_ += y;
  }
  double value() const { return llr_.total(count_, sum_); }
  std::int64_t count() const { return count_; }

 private:
  LogLikelihoodRatio llr_;
  std::int64_t count_ = 0;
  double sum_ = 0.0;
};

/// log(present(y) / absent(y)), validated: y must lie in the support and the
/// ratio must be finite.
double llr(const Distribution& present, const Distribution& absent, double y);

/// D(p || q). Closed form for both families.
double kl_divergence(const Distribution& p, const Distribution& q);

double sample(const Distribution& dist, RandomStream& rng);

enum class DecayKind { Constant, Polynomial, Exponential };

std::string_view to_string(DecayKind kind);

/// Level-dependent flip probability mu_l of the Bernoulli hierarchy.
struct DecaySchedule {
  DecayKind kind = DecayKind::Constant;
  double alpha = 1.0;
  double mu0 = 0.4;

  /// Validates mu0 in (0, 1/2) and the alpha range of the chosen kind.
  void validate() const;
  double mu(int level) const;
};

/// Measurement model of every tree level: h_l^(d), the law of a level-l node
/// that aggregates d targets and 2^l - d normal leaves.
class HierarchicalModel {
 public:
  /// Exponential inter-arrival times; a node's rate is the sum of its leaves.
  static HierarchicalModel exponential_flow(double rate_present, double rate_absent,
                                            std::int64_t leaves);
  /// Bernoulli(1 - mu_l) when a target is present, Bernoulli(mu_l) when not.
  /// Single-target only: target counts above one are unsupported.
  static HierarchicalModel bernoulli(const DecaySchedule& decay, std::int64_t leaves);

  Family family() const { return family_; }
  std::int64_t leaves() const { return leaves_; }
  int depth() const { return depth_; }
  const std::optional<DecaySchedule>& decay() const { return decay_; }

  Distribution leaf_present() const { return distribution(0, 1); }
  Distribution leaf_absent() const { return distribution(0, 0); }

  /// h_level^(target_count). Throws CapacityError when target_count exceeds
  /// 2^level or the level is outside the tree, UnsupportedPairError for
  /// Bernoulli with more than one target.
  Distribution distribution(int level, std::int64_t target_count) const;

  /// The pair a local test compares at a child with `declared` declared
  /// targets: one more target than declared vs exactly as declared.
  struct Hypotheses {
    Distribution one_more;
    Distribution as_declared;
  };
  Hypotheses hypothesis_pair(int level, std::int64_t declared) const;

  /// Same model over a different number of leaves.
  HierarchicalModel with_leaves(std::int64_t leaves) const;

 private:
  HierarchicalModel() = default;

  Family family_ = Family::Exponential;
  double rate_present_ = 1.0;
  double rate_absent_ = 1.0;
  std::optional<DecaySchedule> decay_;
  std::int64_t leaves_ = 2;
  int depth_ = 1;
};

}  // namespace irw
