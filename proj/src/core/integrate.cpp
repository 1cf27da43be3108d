#include "integrate.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "mc.hpp"

namespace heavytail {

namespace {

double xlogx(double s) { return s > 0 ? s * std::log(s) : 0.0; }

IntegralEstimate from_quad(const QuadResult& q) {
  return {q.value, Method::quadrature, q.abs_error, 0, 0, {}};
}

IntegralEstimate from_mc(const McEstimate& m, std::uint64_t seed) {
  return {m.mean, Method::monte_carlo, m.se, m.n, seed, {}};
}

}  // namespace

bool integral_diverges(const Measure& mu, double growth) {
  if (growth <= 0) return false;
  return growth >= mu.moment_sup();
}

bool sphere_average_supported(int n) { return n >= 1 && n <= 3; }

double sphere_average(const std::function<double(const double*)>& f, int n, double r) {
  if (n == 1) {
    double a = r, b = -r;
    return 0.5 * (f(&a) + f(&b));
  }
  if (n == 2) {
    constexpr int K = 96;
    double s = 0;
    for (int k = 0; k < K; ++k) {
      double th = 2.0 * 3.14159265358979323846264338328 * k / K;
      double x[2] = {r * std::cos(th), r * std::sin(th)};
      s += f(x);
    }
    return s / K;
  }
  if (n == 3) {
    using G = boost::math::quadrature::gauss<double, 30>;
    constexpr int M = 48;
    double s = 0;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      double t = G::abscissa()[i], w = G::weights()[i];
      for (int sgn = 0; sgn < 2; ++sgn) {
        double tt = sgn ? -t : t;
        double rho = r * std::sqrt(std::max(0.0, 1.0 - tt * tt));
        double ring = 0;
        for (int j = 0; j < M; ++j) {
          double ph = 2.0 * 3.14159265358979323846264338328 * j / M;
          double x[3] = {rho * std::cos(ph), rho * std::sin(ph), r * tt};
          ring += f(x);
        }
        s += w * ring / M;
      }
    }
    return 0.5 * s;
  }
  throw param_error("sphere_average: only n <= 3 supported");
}

IntegralEstimate expect(const Measure& mu, const std::function<double(const double*)>& F,
                        const std::function<double(double)>& radial_profile,
                        const EvalConfig& cfg) {
  const int n = mu.dim();
  if (cfg.method == Method::quadrature) {
    if (mu.on_half_line()) {
      auto q = mu.expect_radial(
          [&](double r) {
            double x = r;
            return F(&x);
          },
          cfg.rel_tol);
      return from_quad(q);
    }
    if (radial_profile) return from_quad(mu.expect_radial(radial_profile, cfg.rel_tol));
    if (sphere_average_supported(n)) {
      auto q = mu.expect_radial([&](double r) { return sphere_average(F, n, r); },
                                cfg.rel_tol);
      return from_quad(q);
    }
    // no radial route in this dimension: fall back to sampling
    IntegralEstimate e = from_mc(mc_expect(mu, F, cfg.samples, cfg.seed), cfg.seed);
    e.note = "quadrature unavailable (no radial reduction); used monte_carlo";
    return e;
  }
  return from_mc(mc_expect(mu, F, cfg.samples, cfg.seed), cfg.seed);
}

IntegralEstimate mean_field(const Measure& mu, const ScalarField& g, const EvalConfig& cfg) {
  std::function<double(double)> prof;
  if (!mu.on_half_line() && g.sphere_avg) prof = g.sphere_avg;
  return expect(mu, g.eval, prof, cfg);
}

IntegralEstimate variance(const Measure& mu, const ScalarField& g, const EvalConfig& cfg) {
  if (cfg.method == Method::quadrature) {
    bool reducible = mu.on_half_line() || g.sphere_avg || sphere_average_supported(mu.dim());
    if (reducible) {
      IntegralEstimate m = mean_field(mu, g, cfg);
      std::function<double(double)> prof_sq;
      if (!mu.on_half_line() && g.sphere_avg_sq) prof_sq = g.sphere_avg_sq;
      auto ev = g.eval;
      IntegralEstimate m2 = expect(
          mu,
          [ev](const double* x) {
            double v = ev(x);
            return v * v;
          },
          prof_sq, cfg);
      IntegralEstimate out;
      out.method = Method::quadrature;
      out.value = m2.value - m.value * m.value;
      out.abs_error = m2.abs_error + 2.0 * std::abs(m.value) * m.abs_error +
                      m.abs_error * m.abs_error;
      if (out.value < 0) {
        out.note = "variance clamped to 0 (cancellation of " +
                   format_double(out.value) + ")";
        out.value = 0;
      }
      return out;
    }
  }
  // Monte Carlo: center on a first-pass mean over the same stream
  McEstimate m = mc_expect(mu, g.eval, cfg.samples, cfg.seed);
  auto ev = g.eval;
  double c = m.mean;
  McEstimate v = mc_expect(
      mu,
      [ev, c](const double* x) {
        double t = ev(x) - c;
        return t * t;
      },
      cfg.samples, cfg.seed);
  IntegralEstimate out = from_mc(v, cfg.seed);
  out.abs_error += m.se * m.se;
  if (cfg.method == Method::quadrature)
    out.note = "quadrature unavailable (no radial reduction); used monte_carlo";
  return out;
}

IntegralEstimate dirichlet_weighted(const Measure& mu, const ScalarField& g,
                                    const std::function<double(double)>& w,
                                    const EvalConfig& cfg) {
  auto wval = [&w](double r) { return w ? w(r) : 1.0; };
  std::function<double(double)> prof;
  if (!mu.on_half_line() && g.sphere_avg_gradsq) {
    auto gs = g.sphere_avg_gradsq;
    auto wf = w;
    // the gradient can underflow while a polynomial weight overflows, so order
    // the checks to keep 0 * inf out of the quadrature
    prof = [gs, wf](double r) {
      double g2 = gs(r);
      if (g2 == 0) return 0.0;
      return g2 * (wf ? wf(r) : 1.0);
    };
  }
  const ScalarField* gp = &g;
  auto F = [gp, wval](const double* x) {
    double r2 = 0;
    for (int i = 0; i < gp->dim; ++i) r2 += x[i] * x[i];
    double gn = gp->grad_norm(x);
    if (gn == 0) return 0.0;
    return gn * gn * wval(std::sqrt(r2));
  };
  return expect(mu, F, prof, cfg);
}

IntegralEstimate entropy_sq(const Measure& mu, const ScalarField& g, const EvalConfig& cfg) {
  auto ev = g.eval;
  auto Fsq = [ev](const double* x) {
    double v = ev(x);
    return v * v;
  };
  auto Fent = [ev](const double* x) {
    double v = ev(x);
    return xlogx(v * v);
  };
  IntegralEstimate A, B;
  if (cfg.method == Method::quadrature &&
      (mu.on_half_line() || g.radial_value || sphere_average_supported(mu.dim()))) {
    std::function<double(double)> prof_ent, prof_sq;
    if (!mu.on_half_line() && g.radial_value) {
      auto rv = g.radial_value;
      prof_ent = [rv](double r) {
        double v = rv(r);
        return xlogx(v * v);
      };
      prof_sq = [rv](double r) {
        double v = rv(r);
        return v * v;
      };
    }
    A = expect(mu, Fent, prof_ent, cfg);
    B = expect(mu, Fsq, prof_sq, cfg);
  } else {
    McEstimate ma, mb;
    mc_expect_pair(mu, Fent, Fsq, cfg.samples, cfg.seed, ma, mb);
    A = from_mc(ma, cfg.seed);
    B = from_mc(mb, cfg.seed);
    if (cfg.method == Method::quadrature)
      A.note = "quadrature unavailable (no radial reduction); used monte_carlo";
  }
  IntegralEstimate out;
  out.method = A.method;
  out.samples = A.samples;
  out.seed = A.seed;
  out.note = A.note;
  out.value = A.value - xlogx(B.value);
  out.abs_error =
      A.abs_error + B.abs_error * (B.value > 0 ? std::abs(1.0 + std::log(B.value)) : 1.0);
  if (out.value < 0) {
    if (!out.note.empty()) out.note += "; ";
    out.note += "entropy clamped to 0 (cancellation of " + format_double(out.value) + ")";
    out.value = 0;
  }
  return out;
}

IntegralEstimate lp_norm(const Measure& mu, const ScalarField& g, double c, double p,
                         const EvalConfig& cfg) {
  if (!(p >= 1)) throw param_error("lp_norm: p must be >= 1");
  auto ev = g.eval;
  auto F = [ev, c, p](const double* x) { return std::pow(std::abs(ev(x) - c), p); };
  std::function<double(double)> prof;
  if (!mu.on_half_line() && g.radial_value) {
    auto rv = g.radial_value;
    prof = [rv, c, p](double r) { return std::pow(std::abs(rv(r) - c), p); };
  }
  IntegralEstimate e = expect(mu, F, prof, cfg);
  IntegralEstimate out = e;
  double v = std::max(e.value, 0.0);
  out.value = std::pow(v, 1.0 / p);
  out.abs_error = (v > 0) ? out.value / (p * v) * e.abs_error : e.abs_error;
  return out;
}

BestShift best_shift_weighted_norm(const Measure& mu, const ScalarField& g, double a, double b,
                                   const EvalConfig& cfg) {
  if (!(a > 0) || !(b >= 0)) throw param_error("best_shift_weighted_norm: need a > 0, b >= 0");
  const int n = mu.dim();
  auto w = [a, b](double r) { return a + b * r * r; };
  auto rad = [n](const double* x) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return std::sqrt(s);
  };
  auto ev = g.eval;
  auto F0 = [w, rad](const double* x) { return 1.0 / w(rad(x)); };
  auto F1 = [w, rad, ev](const double* x) { return ev(x) / w(rad(x)); };
  auto F2 = [w, rad, ev](const double* x) {
    double v = ev(x);
    return v * v / w(rad(x));
  };
  std::function<double(double)> p0 = [w](double r) { return 1.0 / w(r); };
  std::function<double(double)> p1, p2;
  if (g.sphere_avg) {
    auto sa = g.sphere_avg;
    p1 = [w, sa](double r) { return sa(r) / w(r); };
  }
  if (g.sphere_avg_sq) {
    auto ss = g.sphere_avg_sq;
    p2 = [w, ss](double r) { return ss(r) / w(r); };
  }
  IntegralEstimate A0 = expect(mu, F0, p0, cfg);
  IntegralEstimate A1 = expect(mu, F1, p1, cfg);
  IntegralEstimate A2 = expect(mu, F2, p2, cfg);

  BestShift out;
  out.value.method = A0.method;
  out.value.samples = A0.samples;
  out.value.seed = A0.seed;
  out.value.note = A0.note;
  if (!(A0.value > 0)) throw numeric_error("best_shift_weighted_norm: vanishing weight mass");
  out.c_star = A1.value / A0.value;
  out.value.value = A2.value - A1.value * A1.value / A0.value;
  out.value.abs_error = A2.abs_error + 2.0 * std::abs(out.c_star) * A1.abs_error +
                        out.c_star * out.c_star * A0.abs_error;
  if (out.value.value < 0) {
    if (!out.value.note.empty()) out.value.note += "; ";
    out.value.note +=
        "shifted norm clamped to 0 (cancellation of " + format_double(out.value.value) + ")";
    out.value.value = 0;
  }
  return out;
}

}  // namespace heavytail
