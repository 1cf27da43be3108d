#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/integrate.hpp"
#include "support.hpp"

using namespace heavytail;
namespace ts = testsupport;

TEST_CASE("quadrature expectations hit the closed moment forms") {
  for (int n : {1, 2, 3}) {
    for (double beta : {static_cast<double>(n), n + 1.5}) {
      CauchyParams p(n, beta);
      Measure mu = Measure::cauchy(n, beta);
      ScalarField g0 = gallery_field("inv1px2", n);
      EvalConfig cfg;
      const double i1 = cauchy_moment_product(p, 1);
      const double i2 = cauchy_moment_product(p, 2);
      const double i3 = cauchy_moment_product(p, 3);
      CHECK(mean_field(mu, g0, cfg).value == doctest::Approx(i1).epsilon(1e-9));
      CHECK(variance(mu, g0, cfg).value == doctest::Approx(i2 - i1 * i1).epsilon(1e-8));
      auto w = [](double r) { return 1.0 + r * r; };
      CHECK(dirichlet_weighted(mu, g0, w, cfg).value ==
            doctest::Approx(4.0 * (i2 - i3)).epsilon(1e-8));
    }
  }
}

TEST_CASE("monte carlo matches quadrature within its own error bars") {
  Measure mu = Measure::cauchy(2, 3.0);
  ScalarField g0 = gallery_field("inv1px2", 2);
  EvalConfig mc;
  mc.method = Method::monte_carlo;
  mc.samples = 400000;
  mc.seed = 17;
  IntegralEstimate est = variance(mu, g0, mc);
  const double i1 = cauchy_moment_product(CauchyParams(2, 3.0), 1);
  const double i2 = cauchy_moment_product(CauchyParams(2, 3.0), 2);
  CHECK(est.method == Method::monte_carlo);
  CHECK(est.samples == 400000);
  CHECK(std::abs(est.value - (i2 - i1 * i1)) < 5.0 * est.abs_error);
}

TEST_CASE("monte carlo estimates are byte-stable across repeated calls") {
  Measure mu = Measure::cauchy(1, 2.0);
  ScalarField g = gallery_field("tanh1", 1);
  EvalConfig mc;
  mc.method = Method::monte_carlo;
  mc.samples = 100000;
  mc.seed = 5;
  IntegralEstimate a = mean_field(mu, g, mc);
  IntegralEstimate b = mean_field(mu, g, mc);
  CHECK(a.value == b.value);
  CHECK(a.abs_error == b.abs_error);
}

TEST_CASE("sphere averages of polynomial probes") {
  auto x1sq = [](const double* x) { return x[0] * x[0]; };
  auto x1 = [](const double* x) { return x[0]; };
  for (int n : {1, 2, 3}) {
    CHECK(sphere_average_supported(n));
    for (double r : {0.5, 2.0}) {
      CHECK(sphere_average(x1sq, n, r) == doctest::Approx(r * r / n).epsilon(1e-9));
      CHECK(sphere_average(x1, n, r) == doctest::Approx(0.0).scale(r));
    }
  }
}

TEST_CASE("divergence detection tracks the moment supremum") {
  Measure heavy = Measure::cauchy(1, 1.0);  // moments finite strictly below 1
  CHECK(integral_diverges(heavy, 1.0));
  CHECK(integral_diverges(heavy, 2.0));
  CHECK_FALSE(integral_diverges(heavy, 0.5));
  Measure light = Measure::gaussian(2);
  CHECK_FALSE(integral_diverges(light, 10.0));
}

TEST_CASE("entropy of a squared field against the independent integrator") {
  Measure mu = Measure::cauchy(1, 2.0);
  ScalarField g0 = gallery_field("inv1px2", 1);
  EvalConfig cfg;
  const double z = ts::cauchy_radial_integral(1, 2.0, [](double) { return 1.0; });
  auto moment = [&](auto phi) {
    return ts::cauchy_radial_integral(1, 2.0, phi) / z;
  };
  const double eg2 = moment([](double r) {
    double v = 1.0 / (1.0 + r * r);
    return v * v;
  });
  const double eg2log = moment([](double r) {
    double v = 1.0 / (1.0 + r * r);
    return v * v * std::log(v * v);
  });
  const double oracle = eg2log - eg2 * std::log(eg2);
  CHECK(entropy_sq(mu, g0, cfg).value == doctest::Approx(oracle).epsilon(1e-8));

  ScalarField flat = scale_field(gallery_field("x1", 1), 0.0);
  ScalarField one = shift_field(flat, 1.0);
  CHECK(entropy_sq(mu, one, cfg).value == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("lp norms and weighted best shifts") {
  Measure mu = Measure::cauchy(1, 2.5);
  ScalarField g0 = gallery_field("inv1px2", 1);
  EvalConfig cfg;
  const double i2 = cauchy_moment_product(CauchyParams(1, 2.5), 2);
  CHECK(lp_norm(mu, g0, 0.0, 2.0, cfg).value == doctest::Approx(std::sqrt(i2)).epsilon(1e-9));

  BestShift bs = best_shift_weighted_norm(mu, g0, 1.0, 1.0, cfg);
  // independent evaluation of c -> E (g-c)^2 / (1+r^2)
  const double z = ts::cauchy_radial_integral(1, 2.5, [](double) { return 1.0; });
  auto objective = [&](double c) {
    return ts::cauchy_radial_integral(1, 2.5,
                                      [c](double r) {
                                        double v = 1.0 / (1.0 + r * r) - c;
                                        return v * v / (1.0 + r * r);
                                      }) /
           z;
  };
  CHECK(bs.value.value == doctest::Approx(objective(bs.c_star)).epsilon(1e-8));
  CHECK(objective(bs.c_star) <= objective(bs.c_star + 0.05) + 1e-12);
  CHECK(objective(bs.c_star) <= objective(bs.c_star - 0.05) + 1e-12);
}

TEST_CASE("gallery gradients agree with finite differences") {
  const double pts1[][1] = {{0.3}, {-1.7}, {2.2}};
  const double pts2[][2] = {{0.4, -0.9}, {1.6, 0.3}};
  for (const std::string& name : gallery_names()) {
    ScalarField f1 = gallery_field(name, 1);
    for (const auto& p : pts1) {
      double g[1];
      f1.grad(p, g);
      const double h = 1e-6;
      double xp = p[0] + h, xm = p[0] - h;
      CHECK(g[0] == doctest::Approx((f1.eval(&xp) - f1.eval(&xm)) / (2 * h)).epsilon(1e-5));
    }
    ScalarField f2 = gallery_field(name, 2);
    for (const auto& p : pts2) {
      double g[2];
      f2.grad(p, g);
      for (int i = 0; i < 2; ++i) {
        double pp[2] = {p[0], p[1]}, pm[2] = {p[0], p[1]};
        const double h = 1e-6;
        pp[i] += h;
        pm[i] -= h;
        CHECK(g[i] ==
              doctest::Approx((f2.eval(pp) - f2.eval(pm)) / (2 * h)).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("radial reductions are consistent with pointwise evaluation") {
  for (const std::string& name : gallery_names()) {
    ScalarField f = gallery_field(name, 2);
    if (!f.radial) continue;
    for (double r : {0.3, 1.0, 4.0}) {
      const double x[2] = {r, 0.0};
      CHECK(f.radial_value(r) == doctest::Approx(f.eval(x)).epsilon(1e-12));
      CHECK(f.radial_grad_norm(r) == doctest::Approx(f.grad_norm(x)).epsilon(1e-10));
      CHECK(f.sphere_avg(r) == doctest::Approx(f.radial_value(r)).epsilon(1e-12));
    }
  }
  ScalarField lin = gallery_field("linear", 3);
  CHECK(lin.sphere_avg(2.0) == doctest::Approx(0.0));
  CHECK(lin.sphere_avg_sq(2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(lin.sphere_avg_gradsq(2.0) == doctest::Approx(1.0));
}

TEST_CASE("field shifting and scaling") {
  ScalarField g = gallery_field("tanh1", 1);
  ScalarField s = shift_field(g, 2.0);
  ScalarField a = scale_field(g, -3.0);
  const double x = 0.7;
  CHECK(s.eval(&x) == doctest::Approx(std::tanh(0.7) + 2.0));
  CHECK(a.eval(&x) == doctest::Approx(-3.0 * std::tanh(0.7)));
  double gs[1], ga[1], gg[1];
  g.grad(&x, gg);
  s.grad(&x, gs);
  a.grad(&x, ga);
  CHECK(gs[0] == doctest::Approx(gg[0]));
  CHECK(ga[0] == doctest::Approx(-3.0 * gg[0]));
  CHECK(s.min_value == doctest::Approx(1.0));
}

TEST_CASE("odd symmetry integrates to zero") {
  Measure mu = Measure::cauchy(2, 3.0);
  EvalConfig cfg;
  CHECK(mean_field(mu, gallery_field("x1", 2), cfg).value == doctest::Approx(0.0));
  CHECK(mean_field(mu, gallery_field("linear", 2), cfg).value == doctest::Approx(0.0));
}
