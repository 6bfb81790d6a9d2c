#include "irw/verify.hpp"

#include <cmath>
#include <sstream>

#include "irw/calibration.hpp"
#include "irw/local_tests.hpp"
#include "irw/oracle.hpp"

namespace irw {
namespace {

class Detail {
 public:
  Detail() { out_.precision(6); }
  template <typename T>
  Detail& operator()(const char* key, const T& value) {
    if (!first_) out_ << ' ';
    first_ = false;
    out_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

HierarchicalModel flip_model(double mu) {
  return HierarchicalModel::bernoulli(DecaySchedule{DecayKind::Constant, 1.0, mu}, 2);
}

}  // namespace

std::vector<OracleCheck> oracle_suite() {
  std::vector<OracleCheck> out;
  constexpr double kP = 0.5625;
  constexpr double kMu = 0.4;

  {
    const auto c = oracle::exact_fixed_confidence(7, kMu);
    out.push_back({"fixed test K=7 meets p=0.5625 (Ber 0.6/0.4)",
                   c.p_g > kP && c.p_f > kP,
                   Detail()("p_g", c.p_g)("p_f", c.p_f)("margin_f", c.p_f - kP).str()});
  }
  {
    const auto model = flip_model(kMu);
    const std::int64_t k = calibrate_k(model, 1, kP);
    const auto at = oracle::exact_fixed_confidence(k, kMu);
    const auto below = oracle::exact_fixed_confidence(k - 1, kMu);
    const bool minimal = k == 1 || !(below.p_g > kP && below.p_f > kP);
    out.push_back({"calibrated K is sufficient and minimal under the oracle",
                   at.p_g > kP && at.p_f > kP && minimal,
                   Detail()("K", k)("p_g", at.p_g)("p_f", at.p_f)("p_f(K-1)", below.p_f).str()});
  }
  {
    bool ok = true;
    double worst = 1.0;
    for (int i = 0; i <= 15; ++i) {
      const double mu = 0.34 + 0.01 * i;
      const std::int64_t k = chernoff_sample_bound(mu, 0.75, 0.75);
      const auto c = oracle::exact_fixed_confidence(k, mu);
      worst = std::min({worst, c.p_f - 0.5625, c.p_g - 0.5625});
      ok = ok && c.p_f >= 0.5625 && c.p_g >= 0.5625;
    }
    out.push_back({"closed-form K bound never under-sizes (mu 0.34..0.49)", ok,
                   Detail()("min_margin", worst).str()});
  }
  {
    bool ok = true;
    int cases = 0;
    for (const std::int64_t n : {10, 50, 200, 1000}) {
      for (const double mu : {0.1, 0.3, 0.45}) {
        for (const double delta : {0.1, 0.5, 1.0}) {
          ok = ok && oracle::chernoff_bounds(n, mu, delta).holds();
          ++cases;
        }
      }
    }
    out.push_back({"multiplicative Chernoff bounds hold on the binomial grid", ok,
                   Detail()("cases", cases).str()});
  }
  {
    const auto s = SprtThresholds::for_confidence(kP);
    const auto a = ActiveThresholds::for_confidence(kP);
    const bool ok = std::abs(s.upper - 1.0986) < 5e-5 && std::abs(s.lower + 1.0986) < 5e-5 &&
                    std::abs(a.upper - 0.9445) < 5e-5 && std::abs(a.lower + 0.9445) < 5e-5;
    out.push_back({"threshold constants at p=0.5625", ok,
                   Detail()("gamma1", s.upper)("gamma0", s.lower)("nu1", a.upper)("nu0", a.lower).str()});
  }
  {
    const auto s = SprtThresholds::for_confidence(kP);
    const auto e = oracle::sprt_exact_errors(kMu, s.lower, s.upper);
    const double h0 = (1.0 - e.false_alarm) * (1.0 - e.false_alarm);
    const double h1 = 1.0 - e.miss;
    const double h2 = (1.0 - e.false_alarm) * (1.0 - e.miss);
    out.push_back({"sequential test verdicts exceed p under H0, H1, H2 (exact lattice)",
                   h0 > kP && h1 > kP && h2 > kP,
                   Detail()("P_FA", e.false_alarm)("P_MD", e.miss)("H0", h0)("H1", h1)("H2", h2)(
                       "snapped", e.snapped)
                       .str()});
  }
  {
    const auto model = flip_model(kMu);
    const auto spec = LocalTestSpec::make(LocalTestKind::FixedSample, kP, SampleSizes::uniform(7));
    const auto f = oracle::mc_verdict_distribution(spec, model, 1, Hypothesis::H0, 100000, 11);
    const double exact = oracle::exact_fixed_confidence(7, kMu).p_f;
    const double z = std::abs(f.frequency(Hypothesis::H0) - exact) / f.standard_error(Hypothesis::H0);
    out.push_back({"fixed test H0 frequency matches the exact p_f (3 sigma)", z <= 3.0,
                   Detail()("mc", f.frequency(Hypothesis::H0))("exact", exact)("z", z).str()});
  }
  {
    const auto model = flip_model(kMu);
    const auto spec = LocalTestSpec::make(LocalTestKind::Active, kP, SampleSizes::uniform(7));
    bool ok = true;
    Detail d;
    for (const auto h : {Hypothesis::H0, Hypothesis::H1, Hypothesis::H2}) {
      const auto f = oracle::mc_verdict_distribution(spec, model, 1, h, 100000, 17);
      const double margin = f.frequency(h) - (kP - 3.0 * f.standard_error(h));
      ok = ok && margin > 0.0;
      d(std::string(to_string(h)).c_str(), f.frequency(h));
    }
    out.push_back({"active test verdicts exceed p - 3 sigma under H0, H1, H2", ok, d.str()});
  }
  {
    bool ok = true;
    for (std::int64_t k = 3; k <= 64; ++k) {
      const auto now = oracle::exact_fixed_confidence(k, kMu);
      const auto prev = oracle::exact_fixed_confidence(k - 2, kMu);
      ok = ok && now.p_g >= prev.p_g && now.p_f >= prev.p_f;
    }
    out.push_back({"fixed-test confidence nondecreasing in K within each parity", ok, "K=1..64"});
  }
  return out;
}

}  // namespace irw
