#include "irw/observation_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irw/errors.hpp"
#include "irw/tree.hpp"

namespace irw {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Bernoulli: return "bernoulli";
    case Family::Exponential: return "exponential";
  }
  return "unknown";
}

std::string_view to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::Constant: return "constant";
    case DecayKind::Polynomial: return "polynomial";
    case DecayKind::Exponential: return "exponential";
  }
  return "unknown";
}

Distribution Distribution::bernoulli(double success) {
  if (!(success >= 0.0 && success <= 1.0)) {
    throw std::invalid_argument("Bernoulli parameter must lie in [0, 1]");
  }
  return {Family::Bernoulli, success};
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  return {Family::Exponential, rate};
}

double Distribution::density(double y) const {
  switch (family) {
    case Family::Bernoulli:
      if (y == 1.0) return param;
      if (y == 0.0) return 1.0 - param;
      return 0.0;
    case Family::Exponential:
      return y < 0.0 ? 0.0 : param * std::exp(-param * y);
  }
  return 0.0;
}

double Distribution::mean() const {
  return family == Family::Bernoulli ? param : 1.0 / param;
}

LogLikelihoodRatio::LogLikelihoodRatio(const Distribution& present,
                                       const Distribution& absent) {
  if (present.family != absent.family) {
    throw UnsupportedPairError("LLR between different families");
  }
  if (present == absent) return;
  switch (present.family) {
    case Family::Bernoulli: {
      const double a = present.param;
      const double b = absent.param;
      if (a <= 0.0 || a >= 1.0 || b <= 0.0 || b >= 1.0) {
        throw InfiniteLlrError("Bernoulli LLR needs parameters strictly inside (0, 1)");
      }
      if (a == 1.0 - b) {
        // Mirrored pair: log((1 - a) / (1 - b)) = -log(a / b) exactly.
        mirrored_ = true;
        slope_ = 2.0 * std::log(a / b);
        intercept_ = -0.5 * slope_;
      } else {
        intercept_ = std::log((1.0 - a) / (1.0 - b));
        slope_ = std::log(a / b) - intercept_;
      }
      break;
    }
    case Family::Exponential:
      intercept_ = std::log(present.param / absent.param);
      slope_ = absent.param - present.param;
      break;
  }
}

double llr(const Distribution& present, const Distribution& absent, double y) {
  if (present.family != absent.family) {
    throw UnsupportedPairError("LLR between different families");
  }
  const double num = present.density(y);
  const double den = absent.density(y);
  if (present == absent && num > 0.0) return 0.0;
  if (num <= 0.0 || den <= 0.0) {
    throw InfiniteLlrError("observation has zero density under one hypothesis");
  }
  return LogLikelihoodRatio(present, absent)(y);
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  if (p.family != q.family) throw UnsupportedPairError("KL between different families");
  if (p == q) return 0.0;
  switch (p.family) {
    case Family::Bernoulli: {
      const double a = p.param;
      const double b = q.param;
      auto term = [](double x, double y) {
        if (x == 0.0) return 0.0;
        if (y == 0.0) return std::numeric_limits<double>::infinity();
        return x * std::log(x / y);
      };
      return term(a, b) + term(1.0 - a, 1.0 - b);
    }
    case Family::Exponential: {
      const double ratio = q.param / p.param;
      return ratio - 1.0 - std::log(ratio);
    }
  }
  return 0.0;
}

double sample(const Distribution& dist, RandomStream& rng) {
  const double u = rng.uniform();
  switch (dist.family) {
    case Family::Bernoulli: return u < dist.param ? 1.0 : 0.0;
    case Family::Exponential: return -std::log1p(-u) / dist.param;
  }
  return 0.0;
}

void DecaySchedule::validate() const {
  if (!(mu0 > 0.0 && mu0 < 0.5)) throw std::invalid_argument("mu0 must lie in (0, 1/2)");
  if (kind == DecayKind::Polynomial && !(alpha > 0.0)) {
    throw std::invalid_argument("polynomial decay needs alpha > 0");
  }
  if (kind == DecayKind::Exponential && !(alpha > 1.0)) {
    throw std::invalid_argument("exponential decay needs alpha > 1");
  }
}

double DecaySchedule::mu(int level) const {
  const double gap = 0.5 - mu0;
  switch (kind) {
    case DecayKind::Constant: return mu0;
    case DecayKind::Polynomial: return 0.5 - gap * std::pow(level + 1.0, -alpha);
    case DecayKind::Exponential: return 0.5 - gap * std::pow(alpha, -static_cast<double>(level));
  }
  return mu0;
}

HierarchicalModel HierarchicalModel::exponential_flow(double rate_present,
                                                      double rate_absent,
                                                      std::int64_t leaves) {
  // Validates the rates.
  (void)Distribution::exponential(rate_present);
  (void)Distribution::exponential(rate_absent);
  HierarchicalModel m;
  m.family_ = Family::Exponential;
  m.rate_present_ = rate_present;
  m.rate_absent_ = rate_absent;
  return m.with_leaves(leaves);
}

HierarchicalModel HierarchicalModel::bernoulli(const DecaySchedule& decay,
                                               std::int64_t leaves) {
  decay.validate();
  HierarchicalModel m;
  m.family_ = Family::Bernoulli;
  m.decay_ = decay;
  return m.with_leaves(leaves);
}

HierarchicalModel HierarchicalModel::with_leaves(std::int64_t leaves) const {
  if (leaves < 2 || !is_power_of_two(leaves)) {
    throw std::invalid_argument("leaf count must be a power of two >= 2");
  }
  HierarchicalModel m = *this;
  m.leaves_ = leaves;
  m.depth_ = log2_exact(leaves);
  return m;
}

Distribution HierarchicalModel::distribution(int level, std::int64_t target_count) const {
  if (level < 0 || level > depth_) {
    throw CapacityError("level " + std::to_string(level) + " outside the tree");
  }
  const std::int64_t capacity = std::int64_t{1} << level;
  if (target_count < 0 || target_count > capacity) {
    throw CapacityError("level-" + std::to_string(level) + " node cannot hold " +
                        std::to_string(target_count) + " targets");
  }
  switch (family_) {
    case Family::Exponential: {
      const auto d = static_cast<double>(target_count);
      return Distribution::exponential(d * rate_present_ +
                                       (static_cast<double>(capacity) - d) * rate_absent_);
    }
    case Family::Bernoulli: {
      if (target_count > 1) {
        throw UnsupportedPairError("Bernoulli hierarchy supports at most one target");
      }
      const double mu = decay_->mu(level);
      return Distribution::bernoulli(target_count == 1 ? 1.0 - mu : mu);
    }
  }
  return {};
}

HierarchicalModel::Hypotheses HierarchicalModel::hypothesis_pair(int level,
                                                                 std::int64_t declared) const {
  return {distribution(level, declared + 1), distribution(level, declared)};
}

}  // namespace irw
