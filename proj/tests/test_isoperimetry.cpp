#include <doctest.h>

#include <cmath>

#include "core/isoperimetry.hpp"
#include "support.hpp"

using namespace heavytail;
namespace ts = testsupport;

namespace {
// one-sided 1D density at |x| = r
double dens1(double beta, double r) {
  const double z = ts::cauchy_radial_integral(1, beta, [](double) { return 1.0; });
  return std::pow(1.0 + r * r, -beta) / z;
}
}  // namespace

TEST_CASE("parametric sets") {
  ParametricSet h = ParametricSet::half_space(-0.4);
  CHECK(h.family_name() == "half_space");
  CHECK(h.offset == doctest::Approx(-0.4));
  ParametricSet b = ParametricSet::ball(2.0);
  CHECK(b.family_name() == "ball");
  CHECK_THROWS_AS(ParametricSet::ball(0.0), param_error);
}

TEST_CASE("set measures: one-dimensional sign rule and ball cdf") {
  Measure mu = Measure::cauchy(1, 1.0);
  CHECK(set_measure(mu, ParametricSet::half_space(0.0)) == doctest::Approx(0.5));
  CHECK(set_measure(mu, ParametricSet::half_space(std::sqrt(3.0))) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-9));
  CHECK(set_measure(mu, ParametricSet::half_space(-std::sqrt(3.0))) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  Measure mu2 = Measure::cauchy(2, 3.0);
  CHECK(set_measure(mu2, ParametricSet::ball(1.2)) ==
        doctest::Approx(mu2.radial_cdf(1.2)).epsilon(1e-12));
  CHECK_THROWS_AS(set_measure(Measure::exponential(1.0), ParametricSet::ball(1.0)),
                  param_error);
}

TEST_CASE("planar half-space mass agrees with sampling") {
  Measure mu = Measure::cauchy(2, 4.0);
  for (double a : {-0.7, 0.0, 1.3}) {
    const double p = set_measure(mu, ParametricSet::half_space(a));
    const std::uint64_t N = 200000;
    std::uint64_t hits = 0;
    double x[2];
    for (std::uint64_t i = 0; i < N; ++i) {
      mu.sample(21, i, x);
      if (x[0] <= a) ++hits;
    }
    const double phat = static_cast<double>(hits) / N;
    const double se = std::sqrt(p * (1.0 - p) / N);
    CHECK(std::abs(phat - p) < 4.0 * se + 1e-9);
  }
}

TEST_CASE("weighted mass: transform identities and a direct integral") {
  Measure mu = Measure::cauchy(1, 2.0);
  ParametricSet A = ParametricSet::half_space(-0.8);
  const double muA = set_measure(mu, A);
  const double m1 = weighted_mass(mu, A, 1.0).value;
  const double m3 = weighted_mass(mu, A, 3.0).value;
  CHECK(m3 - m1 == doctest::Approx(2.0 * muA).epsilon(1e-9));
  CHECK(weighted_mass(mu, A, 1.0, 5.0).value == doctest::Approx(5.0 * m1).epsilon(1e-12));
  const double oracle = ts::integrate_half_line([&](double r) {
    return r < 0.8 ? 0.0 : (1.0 + r) * dens1(2.0, r);
  });
  CHECK(m1 == doctest::Approx(oracle).epsilon(1e-7));

  ParametricSet B = ParametricSet::ball(1.5);
  const double mb = weighted_mass(mu, B, 0.5).value;
  const double oracle_b = 2.0 * ts::integrate_finite(
                              [&](double r) { return (0.5 + r) * dens1(2.0, r); }, 0.0, 1.5);
  CHECK(mb == doctest::Approx(oracle_b).epsilon(1e-8));
}

TEST_CASE("weighted perimeter closed forms") {
  Measure mu = Measure::cauchy(1, 1.0);
  CHECK(weighted_perimeter(mu, ParametricSet::half_space(1.0), 2.0) ==
        doctest::Approx(3.0 * dens1(1.0, 1.0)).epsilon(1e-9));
  CHECK(weighted_perimeter(mu, ParametricSet::half_space(-1.0), 2.0) ==
        doctest::Approx(3.0 * dens1(1.0, 1.0)).epsilon(1e-9));
  Measure mu1 = Measure::cauchy(1, 2.0);
  CHECK(weighted_perimeter(mu1, ParametricSet::ball(0.6), 0.25) ==
        doctest::Approx(2.0 * 0.85 * dens1(2.0, 0.6)).epsilon(1e-9));

  Measure mu2 = Measure::cauchy(2, 3.0);
  const double z2 = ts::cauchy_radial_integral(2, 3.0, [](double) { return 1.0; });
  const double rho = std::pow(1.0 + 0.81, -3.0) / z2;
  CHECK(weighted_perimeter(mu2, ParametricSet::ball(0.9), 1.0) ==
        doctest::Approx(2.0 * std::acos(-1.0) * 0.9 * 1.9 * rho).epsilon(1e-9));

  // planar half-space boundary: direct slice integral along the line x1 = a
  const double a = 0.6, rw = 0.75;
  const double slice = ts::integrate_real_line([&](double s) {
    const double r = std::hypot(a, s);
    return (rw + r) * std::pow(1.0 + r * r, -3.0) / z2;
  });
  CHECK(weighted_perimeter(mu2, ParametricSet::half_space(a), rw) ==
        doctest::Approx(slice).epsilon(1e-8));
}

TEST_CASE("perimeter equals the minkowski derivative of the weighted mass") {
  const double eps = 1e-4;
  Measure m1 = Measure::cauchy(1, 2.0);
  Measure m2 = Measure::cauchy(2, 4.0);
  const double rw = 1.0;
  auto mink = [&](const Measure& mu, const ParametricSet& A, const ParametricSet& Ae) {
    return (weighted_mass(mu, Ae, rw).value - weighted_mass(mu, A, rw).value) / eps;
  };
  {
    ParametricSet A = ParametricSet::half_space(0.8);
    ParametricSet Ae = ParametricSet::half_space(0.8 + eps);
    CHECK(weighted_perimeter(m1, A, rw) == doctest::Approx(mink(m1, A, Ae)).epsilon(1e-3));
  }
  {
    ParametricSet A = ParametricSet::ball(1.1);
    ParametricSet Ae = ParametricSet::ball(1.1 + eps);
    CHECK(weighted_perimeter(m1, A, rw) == doctest::Approx(mink(m1, A, Ae)).epsilon(1e-3));
    CHECK(weighted_perimeter(m2, A, rw) == doctest::Approx(mink(m2, A, Ae)).epsilon(1e-3));
  }
  {
    ParametricSet A = ParametricSet::half_space(-0.5);
    ParametricSet Ae = ParametricSet::half_space(-0.5 + eps);
    CHECK(weighted_perimeter(m2, A, rw) == doctest::Approx(mink(m2, A, Ae)).epsilon(1e-3));
  }
}

TEST_CASE("profile lower bound on perimeters") {
  CheckConfig cfg;
  for (double beta : {2.0, 5.0}) {
    Measure mu = Measure::cauchy(1, beta);
    const double r = mu.radial_quantile(2.0 / 3.0);
    for (double a : {-1.0, 0.3, 2.0}) {
      InequalityReport rep = check_eq56(mu, ParametricSet::half_space(a), r, cfg);
      CHECK(rep.verdict == Verdict::holds);
      double kap = kNaN;
      for (const auto& [k, v] : rep.extra_params)
        if (k == "kappa") kap = v;
      CHECK(kap == doctest::Approx(-1.0 / (beta - 1.0)).epsilon(1e-12));
      // recompute the profile combination from the reported ingredients
      double muA = kNaN, muBr = kNaN;
      for (const auto& [k, v] : rep.extra_params) {
        if (k == "mu_A") muA = v;
        if (k == "mu_Br") muBr = v;
      }
      const double lhs = std::pow(muA, 1.0 - kap) *
                         (std::pow(muA, kap) - std::pow(muBr, kap)) / (-kap);
      CHECK(rep.lhs.value == doctest::Approx(lhs).epsilon(1e-10));
    }
  }
  Measure mu2 = Measure::cauchy(2, 4.0);
  const double r2 = mu2.radial_quantile(2.0 / 3.0);
  for (double s : {0.4, 1.0, 2.8}) {
    InequalityReport rep = check_eq56(mu2, ParametricSet::ball(s), r2, cfg);
    CHECK(rep.verdict == Verdict::holds);
  }
  CHECK_THROWS_AS(check_eq56(Measure::cauchy(1, 1.0), ParametricSet::ball(1.0), 1.0, cfg),
                  param_error);
}

TEST_CASE("cheeger-type bound with the log constant") {
  CheckConfig cfg;
  Measure mu = Measure::cauchy(1, 2.0);
  const double r = mu.radial_quantile(0.75);
  InequalityReport rep = check_eq55(mu, ParametricSet::half_space(-0.5), r, cfg);
  CHECK(rep.verdict == Verdict::holds);
  const double kap = -1.0;
  const double D = (1.0 - kap) / std::log(2.0 * mu.radial_cdf(r));
  CHECK(rep.constant_used == doctest::Approx(D).epsilon(1e-10));
  // r with mu(B_r) <= 1/2 is a usage error
  CHECK_THROWS_AS(check_eq55(mu, ParametricSet::half_space(-0.5), 0.2, cfg), param_error);
  // sets larger than half the mass are out of scope
  CHECK_THROWS_AS(check_eq55(mu, ParametricSet::half_space(1.0), r, cfg),
                  precondition_error);
}

TEST_CASE("universal weighted variance bound") {
  CheckConfig cfg;
  for (int n : {1, 2}) {
    Measure mu = Measure::cauchy(n, 2.0 * n);
    for (const char* name : {"inv1px2", "tanh1", "x1"}) {
      InequalityReport rep = check_thm51(mu, gallery_field(name, n), cfg);
      CHECK(rep.verdict == Verdict::holds);
      const double l43 = std::log(4.0 / 3.0);
      CHECK(rep.constant_used ==
            doctest::Approx(8.0 / (l43 * l43) * (n + 1.0) / n).epsilon(1e-12));
      double rq = kNaN;
      for (const auto& [k, v] : rep.extra_params)
        if (k == "r") rq = v;
      CHECK(rq == doctest::Approx(mu.radial_quantile(2.0 / 3.0)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(
      check_thm51(Measure::cauchy(1, 1.0), gallery_field("tanh1", 1), cfg), param_error);
}

TEST_CASE("ratio-only structure probe") {
  CheckConfig cfg;
  Measure mu = Measure::cauchy(1, 2.0);
  InequalityReport rep = check_cor52(mu, gallery_field("tanh1", 1), cfg);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.ratio > 0.0);
  double m0 = kNaN, rom = kNaN;
  for (const auto& [k, v] : rep.extra_params) {
    if (k == "m0") m0 = v;
    if (k == "r_over_m0") rom = v;
  }
  CHECK(m0 == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(rom == doctest::Approx(mu.radial_quantile(2.0 / 3.0) / m0).epsilon(1e-8));
  CHECK(rep.note.find("ratio-only") != std::string::npos);

  ScalarField zero = scale_field(gallery_field("inv1px2", 1), 0.0);
  InequalityReport flat = check_cor52(mu, zero, cfg);
  CHECK(flat.ratio == 0.0);
  CHECK(flat.verdict == Verdict::inconclusive);
}
