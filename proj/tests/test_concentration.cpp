#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/concentration.hpp"
#include "core/runner.hpp"
#include "support.hpp"

using namespace heavytail;
namespace ts = testsupport;

namespace {
constexpr double kAlphaStarGauss1px2 = 3.56111669864861368184564142472;

// moments of the rescaled family straight from the transformed density
double rescaled_moment_oracle(int n, double beta, double q) {
  const double d = 2.0 * beta - n;
  auto dens = [&](double r) {
    return std::pow(r, n - 1) * std::pow(1.0 + r * r / d, -beta);
  };
  const double z = ts::integrate_half_line(dens);
  return ts::integrate_half_line(
             [&](double r) { return std::pow(1.0 + r * r / d, q) * dens(r); }) /
         z;
}
}  // namespace

TEST_CASE("rescaled even moments: closed product against the density integral") {
  for (int q : {0, 1, 2, 3}) {
    CHECK(rescaled_even_moment(1, 6.0, q) ==
          doctest::Approx(rescaled_moment_oracle(1, 6.0, q)).epsilon(1e-9));
    CHECK(rescaled_even_moment(2, 8.0, q) ==
          doctest::Approx(rescaled_moment_oracle(2, 8.0, q)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(rescaled_even_moment(1, 3.0, 3), numeric_error);  // alpha = 2.5
  CHECK_THROWS_AS(rescaled_even_moment(1, 3.0, -1), param_error);
}

TEST_CASE("transport weight norms") {
  const int q = 2;
  const double prod = rescaled_even_moment(1, 6.0, q);
  CHECK(weight_norm_wp(1, 6.0, q, false) == doctest::Approx(prod).epsilon(1e-13));
  const double closed = std::pow(std::pow(15.0, q) * prod, 1.0 / (2.0 * q));
  CHECK(weight_norm_wp(1, 6.0, q, true) == doctest::Approx(closed).epsilon(1e-13));
  // real-order quadrature norm agrees at the even integers
  CHECK(weight_norm_quad(1, 6.0, 2.0 * q, "poincare") ==
        doctest::Approx(closed).epsilon(1e-9));
  // p at or above the moment ceiling diverges
  CHECK(std::isinf(weight_norm_quad(1, 2.0, 4.0, "poincare")));
  CHECK_THROWS_AS(weight_norm_quad(1, 6.0, 2.0, "triangular"), param_error);
}

TEST_CASE("moment growth bound holds for 1-Lipschitz gallery fields") {
  CheckConfig cfg;
  for (const char* kind : {"poincare", "lsi"}) {
    for (double p : {2.0, 4.0}) {
      InequalityReport r = check_thm41(1, 4.0, gallery_field("x1", 1), p, kind, cfg);
      CHECK(r.verdict == Verdict::holds);
      InequalityReport s = check_thm41(2, 5.0, gallery_field("smoothabs", 2), p, kind, cfg);
      CHECK(s.verdict == Verdict::holds);
    }
  }
  CHECK_THROWS_AS(check_thm41(1, 4.0, gallery_field("x1", 1), 1.0, "poincare", CheckConfig{}),
                  param_error);
  CHECK_THROWS_AS(check_thm41(1, 1.5, gallery_field("x1", 1), 2.0, "poincare", CheckConfig{}),
                  param_error);
  ScalarField steep = scale_field(gallery_field("x1", 1), 2.0);
  CHECK_THROWS_AS(check_thm41(1, 4.0, steep, 2.0, "poincare", CheckConfig{}),
                  precondition_error);
}

TEST_CASE("two-branch envelope is continuous at the crossover") {
  TailEnvelope env = envelope_poincare(2.3, 3.0);
  const double t1 = env.t1;
  CHECK(t1 == doctest::Approx(2.3 * std::exp(1.0) * 3.0).epsilon(1e-15));
  const double left = env(t1 * (1.0 - 1e-15));
  const double right = env(t1 * (1.0 + 1e-15));
  const double at = env(t1);
  // pow on one side vs exp on the other agree to a few dozen ulp, not exactly
  CHECK(std::abs(left - at) <= 1e-13 * at);
  CHECK(std::abs(right - at) <= 1e-13 * at);
  CHECK(at == doctest::Approx(2.0 * std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("gaussian-branch envelope flattens past its validity window") {
  TailEnvelope env = envelope_lsi(1.7, 4.0);
  const double cap = 2.0 * std::exp(-2.0);
  CHECK(env(env.t0) == doctest::Approx(cap).epsilon(1e-13));
  CHECK(env(2.0 * env.t0) == doctest::Approx(cap).epsilon(1e-13));
  CHECK(env(10.0 * env.t0) == doctest::Approx(cap).epsilon(1e-13));
  CHECK(env(0.5 * env.t0) > cap);
}

TEST_CASE("three-regime envelope: breakpoints and the conservative jump") {
  TailEnvelope env = envelope_cauchy3(2, 4.0);
  CHECK(env.p == doctest::Approx(4.0));  // q = floor(4 - 1.5) = 2
  CHECK(env.t0 == doctest::Approx(4.0 * std::sqrt(2.0 * std::exp(1.0))).epsilon(1e-14));
  CHECK(env.t1 == doctest::Approx(14.0 * std::exp(1.0)).epsilon(1e-14));
  // exponential-to-power handoff jumps upward (the power branch is weaker);
  // the exponential branch ends at 2 exp(-t1/7e) = 2 exp(-p/2)
  const double left = env(env.t1);
  const double right = env(env.t1 * (1.0 + 1e-12));
  CHECK(right > left * 2.0);
  CHECK(left == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(right == doctest::Approx(2.0 * std::pow(2.0 / std::exp(1.0), 4.0)).epsilon(1e-9));
  CHECK_THROWS_AS(envelope_cauchy3(2, 2.5), param_error);
}

TEST_CASE("tail grid spans the regimes and pins the breakpoints") {
  TailEnvelope env = envelope_cauchy3(2, 4.0);
  std::vector<double> ts = tail_tgrid(env, 20, 4.0);
  CHECK(ts.size() >= 20);
  CHECK(std::is_sorted(ts.begin(), ts.end()));
  CHECK(ts.front() == doctest::Approx(env.t0 / 8.0).epsilon(1e-12));
  CHECK(ts.back() == doctest::Approx(4.0 * env.t1).epsilon(1e-12));
  bool has_t0 = false, has_t1 = false;
  for (double t : ts) {
    if (std::abs(t - env.t0) < 1e-9) has_t0 = true;
    if (std::abs(t - env.t1) < 1e-9) has_t1 = true;
  }
  CHECK(has_t0);
  CHECK(has_t1);
}

TEST_CASE("empirical tails respect the envelope and repeat byte-for-byte") {
  TailReport a = check_cor44(2, 4.0, gallery_field("linear", 2), 12, 4.0, 200000, 9);
  CHECK(a.verdict == Verdict::holds);
  for (const TailPoint& pt : a.points) {
    CHECK(pt.verdict == Verdict::holds);
    CHECK(pt.bound > 0.0);
  }
  TailReport b = check_cor44(2, 4.0, gallery_field("linear", 2), 12, 4.0, 200000, 9);
  CHECK(tails_csv(a) == tails_csv(b));
  CHECK(tails_csv(a).rfind("t,bound,empirical,stderr,verdict\n", 0) == 0);

  ScalarField steep = scale_field(gallery_field("x1", 2), 3.0);
  CHECK_THROWS_AS(check_cor44(2, 4.0, steep, 12, 4.0, 1000, 1), precondition_error);
  CHECK_THROWS_AS(check_cor44(2, 2.5, gallery_field("x1", 2), 12, 4.0, 1000, 1), param_error);
}

TEST_CASE("exponential-moment threshold: pinned gaussian value, heavy-tail divergence") {
  ExpMomentResult em = exp_moment_alpha(
      Measure::gaussian(1), [](double r) { return 1.0 + r * r; }, 2.0);
  CHECK_FALSE(em.divergent);
  CHECK(em.alpha == doctest::Approx(kAlphaStarGauss1px2).epsilon(1e-8));
  ExpMomentResult div = exp_moment_alpha(
      Measure::cauchy(1, 1.0), [](double r) { return 1.0 + r * r; }, 2.0);
  CHECK(div.divergent);
}

TEST_CASE("exponential-concentration probe stays report-only") {
  CheckConfig cfg;
  cfg.samples = 100000;
  InequalityReport r =
      check_cor43("gauss", 1, kNaN, "1px2", gallery_field("tanh1", 1), 3.0, cfg);
  CHECK(r.verdict == Verdict::inconclusive);
  bool has_alpha = false;
  for (const auto& [k, v] : r.extra_params)
    if (k == "alpha_star") {
      has_alpha = true;
      CHECK(v == doctest::Approx(kAlphaStarGauss1px2).epsilon(1e-7));
    }
  CHECK(has_alpha);
  InequalityReport d =
      check_cor43("cauchy", 1, 1.0, "1px2", gallery_field("tanh1", 1), 3.0, cfg);
  CHECK(d.verdict == Verdict::inconclusive);
  CHECK(d.note.find("diverges") != std::string::npos);
  CHECK_THROWS_AS(
      check_cor43("gauss", 1, kNaN, "l-shaped", gallery_field("tanh1", 1), 3.0, cfg),
      param_error);
}
