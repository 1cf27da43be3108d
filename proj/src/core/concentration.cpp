#include "concentration.hpp"

#include <algorithm>
#include <cmath>

#include "mc.hpp"

namespace heavytail {

double rescaled_even_moment(int n, double beta, int q) {
  CauchyParams p(n, beta);
  if (q < 0) throw param_error("rescaled_even_moment: q must be >= 0");
  if (!(q < p.alpha()))
    throw numeric_error("rescaled_even_moment: diverges for q >= alpha = " +
                        format_double(p.alpha()));
  double prod = 1;
  for (int j = 1; j <= q; ++j) prod *= (beta - j) / (p.alpha() - j);
  return prod;
}

double weight_norm_wp(int n, double beta, int q, bool scale15) {
  double prod = rescaled_even_moment(n, beta, q);
  if (!scale15) return prod;
  if (q == 0) throw param_error("weight_norm_wp: q must be positive for the norm");
  return std::pow(std::pow(15.0, q) * prod, 1.0 / (2.0 * q));
}

double weight_norm_quad(int n, double beta, double p, const std::string& kind) {
  if (!(p >= 1)) throw param_error("weight_norm_quad: p must be >= 1");
  CauchyParams par(n, beta);
  const double d = par.d();
  const Measure mu = Measure::cauchy_rescaled(n, beta);
  double scale, expo;
  if (kind == "poincare") {
    scale = 15.0;  // w^2 = 15 (1 + |x|^2/d)
    expo = 0.5 * p;
  } else if (kind == "lsi") {
    scale = par.alpha() / (beta - 1.0);  // w^2 = (alpha/(beta-1)) (1 + |x|^2/d)^2
    expo = p;
  } else {
    throw param_error("weight_norm_quad: kind must be poincare or lsi");
  }
  if (integral_diverges(mu, 2.0 * expo)) return kInf;
  QuadResult q = mu.expect_radial(
      [d, expo](double r) { return std::pow(1.0 + r * r / d, expo); }, 1e-11);
  return std::sqrt(scale) * std::pow(q.value, 1.0 / p);
}

InequalityReport check_thm41(int n, double beta, const ScalarField& g, double p,
                             const std::string& kind, const CheckConfig& cfg) {
  CauchyParams par(n, beta);
  if (!(p >= 2)) throw param_error("thm41: requires p >= 2");
  if (kind == "poincare") {
    if (!(beta >= n + 1)) throw param_error("thm41: poincare weight needs beta >= n + 1");
  } else if (kind == "lsi") {
    if (!(beta >= 0.5 * (n + 1)) || !(beta > 1))
      throw param_error("thm41: lsi weight needs beta >= (n+1)/2 and beta > 1");
  } else {
    throw param_error("thm41: kind must be poincare or lsi");
  }
  require(g.dim == n, "thm41: field dimension does not match n");
  if (std::isnan(g.lipschitz))
    throw precondition_error("thm41: field has no analytic Lipschitz constant");
  if (g.lipschitz > 1.0 + 1e-12)
    throw precondition_error("thm41: field is not 1-Lipschitz (constant " +
                             format_double(g.lipschitz) + ")");
  InequalityReport r = base_report("thm41", n, beta, &g, cfg);
  r.extra_params.push_back({"p", p});
  r.note = "kind=" + kind;
  const Measure mu = Measure::cauchy_rescaled(n, beta);
  EvalConfig ev = eval_config(cfg);

  const double wn = weight_norm_quad(n, beta, p, kind);
  const double factor = kind == "poincare" ? p / std::sqrt(2.0) : std::sqrt(p - 1.0);
  r.extra_params.push_back({"w_norm", wn});
  if (!std::isfinite(wn)) {
    IntegralEstimate lhs;
    bool lhs_div = integral_diverges(mu, p * std::max(g.value_growth, 0.0));
    if (lhs_div) {
      lhs.value = kInf;
    } else {
      IntegralEstimate m = mean_field(mu, g, ev);
      lhs = lp_norm(mu, g, m.value, p, ev);
      r.extra_params.push_back({"mean", m.value});
    }
    set_vacuous(r, lhs, factor, "weight has no finite p-th moment");
    return r;
  }
  if (integral_diverges(mu, p * std::max(g.value_growth, 0.0)))
    throw numeric_error("thm41: centered p-th moment diverges against a finite right-hand side");
  IntegralEstimate m = mean_field(mu, g, ev);
  r.extra_params.push_back({"mean", m.value});
  IntegralEstimate lhs = lp_norm(mu, g, m.value, p, ev);
  lhs.abs_error += m.abs_error;  // ||f - c||_p is 1-Lipschitz in c
  IntegralEstimate rhs;
  rhs.value = wn;
  rhs.abs_error = 1e-10 * wn;
  set_sides(r, lhs, rhs, factor);
  return r;
}

double TailEnvelope::operator()(double t) const {
  if (t < 0) throw param_error("tail envelope: t must be >= 0");
  const double e = std::exp(1.0);
  if (kind == "poincare") {
    if (t <= t1) return 2.0 * std::exp(-t / (C * e));
    return 2.0 * std::pow(C * p / t, p);
  }
  if (kind == "lsi") {
    // beyond the claimed interval the t0-level remains a valid (flat) bound
    double tt = std::min(t, t0);
    return 2.0 * std::exp(-tt * tt / (2.0 * C * C * e));
  }
  if (kind == "cauchy3") {
    if (t < t0) return 2.0 * std::exp(-t * t / (32.0 * e));
    if (t <= t1) return 2.0 * std::exp(-t / (7.0 * e));
    return 2.0 * std::pow(7.0 * p / t, p);
  }
  throw param_error("tail envelope: unknown kind '" + kind + "'");
}

TailEnvelope envelope_poincare(double C, double p) {
  if (!(C > 0) || !(p >= 1)) throw param_error("envelope: requires C > 0 and p >= 1");
  TailEnvelope env;
  env.kind = "poincare";
  env.C = C;
  env.p = p;
  env.t1 = C * std::exp(1.0) * p;
  return env;
}

TailEnvelope envelope_lsi(double C, double p) {
  if (!(C > 0) || !(p >= 1)) throw param_error("envelope: requires C > 0 and p >= 1");
  TailEnvelope env;
  env.kind = "lsi";
  env.C = C;
  env.p = p;
  env.t0 = C * std::sqrt(std::exp(1.0) * p);
  return env;
}

TailEnvelope envelope_cauchy3(int n, double beta) {
  CauchyParams par(n, beta);
  if (!(beta >= n + 1)) throw param_error("envelope: three-regime form needs beta >= n + 1");
  const double q = std::floor(beta - 0.75 * n);
  TailEnvelope env;
  env.kind = "cauchy3";
  env.p = 2.0 * q;
  env.C = 7.0;  // informational; branch constants are baked into eval
  env.t0 = 4.0 * std::sqrt(std::exp(1.0) * q);
  env.t1 = 7.0 * std::exp(1.0) * q;
  return env;
}

std::vector<double> tail_tgrid(const TailEnvelope& env, int points, double tmax_mult) {
  if (points < 2) throw param_error("tail_tgrid: need at least 2 points");
  if (!(tmax_mult > 0)) throw param_error("tail_tgrid: tmax multiplier must be positive");
  const double ref_hi = std::isfinite(env.t1) ? env.t1 : env.t0;
  const double lo = (std::isfinite(env.t0) ? env.t0 : env.t1) / 8.0;
  const double hi = tmax_mult * ref_hi;
  std::vector<double> ts;
  for (int i = 0; i < points; ++i)
    ts.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  if (std::isfinite(env.t0)) ts.push_back(env.t0);
  if (std::isfinite(env.t1)) ts.push_back(env.t1);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12 * (a + b); }),
           ts.end());
  return ts;
}

TailReport empirical_tail(const Measure& mu, const ScalarField& f, const TailEnvelope& env,
                          const std::vector<double>& tgrid, std::uint64_t samples,
                          std::uint64_t seed) {
  TailReport rep;
  rep.id = "tails_" + env.kind;
  rep.n = mu.dim();
  rep.beta = (mu.kind() == Measure::Kind::cauchy || mu.kind() == Measure::Kind::cauchy_rescaled)
                 ? mu.beta()
                 : kNaN;
  rep.g_name = f.name;
  rep.env = env;
  rep.samples = samples;
  rep.seed = seed;
  McEstimate m = mc_expect(mu, f.eval, samples, seed);
  rep.center = m.mean;
  rep.center_se = m.se;
  auto ev = f.eval;
  const double c = m.mean;
  auto absf = [ev, c](const double* x) { return std::abs(ev(x) - c); };
  std::vector<double> ses;
  std::vector<double> probs = mc_tail_probs(mu, absf, tgrid, samples, seed, &ses);
  rep.verdict = Verdict::holds;
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    TailPoint pt;
    pt.t = tgrid[i];
    pt.bound = env(pt.t);
    pt.empirical = probs[i];
    pt.stderr_ = ses[i];
    // center noise folded in by evaluating the bound slightly to the left
    double shifted = std::max(pt.t - 3.0 * m.se, 0.0);
    pt.verdict =
        (pt.empirical <= env(shifted) + 3.0 * pt.stderr_) ? Verdict::holds : Verdict::violated;
    if (pt.verdict == Verdict::violated) rep.verdict = Verdict::violated;
    rep.points.push_back(pt);
  }
  return rep;
}

TailReport check_cor44(int n, double beta, const ScalarField& f, int points, double tmax_mult,
                       std::uint64_t samples, std::uint64_t seed) {
  require(f.dim == n, "cor44: field dimension does not match n");
  if (std::isnan(f.lipschitz) || f.lipschitz > 1.0 + 1e-12)
    throw precondition_error("cor44: field must be 1-Lipschitz with a known constant");
  TailEnvelope env = envelope_cauchy3(n, beta);
  const Measure mu = Measure::cauchy_rescaled(n, beta);
  TailReport rep = empirical_tail(mu, f, env, tail_tgrid(env, points, tmax_mult), samples, seed);
  rep.id = "cor44";
  return rep;
}

ExpMomentResult exp_moment_alpha(const Measure& mu, const std::function<double(double)>& w2,
                                 double w2_growth) {
  ExpMomentResult res;
  if (w2_growth > 0 && std::isfinite(mu.moment_sup())) {
    res.divergent = true;  // polynomial tails cannot absorb a growing exponent
    return res;
  }
  const auto& shape = mu.radial_shape();
  const int n = mu.dim();
  auto log_integrand = [&](double r, double alpha) {
    return shape.log_profile(r) + w2(r) / alpha + (n - 1) * std::log(std::max(r, 1e-300));
  };
  auto diverges = [&](double alpha) {
    double prev = log_integrand(20.0, alpha);
    for (double r : {60.0, 180.0, 540.0}) {
      double cur = log_integrand(r, alpha);
      if (cur <= prev) return false;
      prev = cur;
    }
    return true;
  };
  auto value = [&](double alpha) {
    if (diverges(alpha)) return kInf;
    QuadResult q = mu.expect_radial([&](double r) { return std::exp(w2(r) / alpha); }, 1e-10);
    return q.value;
  };
  double hi = std::max(1.0, w2(0.0));
  int guard = 0;
  while (value(hi) > 2.0) {
    hi *= 2.0;
    if (++guard > 200) {
      res.divergent = true;
      return res;
    }
  }
  double lo = hi;
  guard = 0;
  while (value(lo * 0.5) <= 2.0) {
    lo *= 0.5;
    if (++guard > 600) break;  // alpha* -> 0: integrand bounded by log 2 everywhere
  }
  lo *= 0.5;
  for (int it = 0; it < 120 && (hi - lo) > 1e-13 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (value(mid) <= 2.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.alpha = hi;
  return res;
}

InequalityReport check_cor43(const std::string& measure_kind, int n, double beta,
                             const std::string& w2_kind, const ScalarField& f, double K,
                             const CheckConfig& cfg) {
  if (!(K > 0)) throw param_error("cor43: requires K > 0");
  require(f.dim == n, "cor43: field dimension does not match n");
  Measure mu = Measure::gaussian(n);
  double beta_rep = kNaN;
  if (measure_kind == "gauss") {
  } else if (measure_kind == "cauchy") {
    mu = Measure::cauchy(n, beta);
    beta_rep = beta;
  } else {
    throw param_error("cor43: measure must be gauss or cauchy");
  }
  std::function<double(double)> w2;
  double growth;
  if (w2_kind == "const") {
    w2 = [](double) { return 1.0; };
    growth = 0;
  } else if (w2_kind == "1px2") {
    w2 = [](double r) { return 1.0 + r * r; };
    growth = 2;
  } else if (w2_kind == "1px2sq") {
    w2 = [](double r) {
      double w = 1.0 + r * r;
      return w * w;
    };
    growth = 4;
  } else {
    throw param_error("cor43: weight must be const, 1px2 or 1px2sq");
  }
  InequalityReport r = base_report("cor43", n, beta_rep, &f, cfg);
  r.extra_params.push_back({"K", K});
  ExpMomentResult em = exp_moment_alpha(mu, w2, growth);
  if (em.divergent) {
    r.extra_params.push_back({"divergent", 1.0});
    r.lhs.value = kNaN;
    r.rhs.value = kNaN;
    r.ratio = kNaN;
    r.verdict = Verdict::inconclusive;
    r.note = "exponential moment diverges for every alpha (heavy tails); no envelope applies";
    return r;
  }
  r.extra_params.push_back({"alpha_star", em.alpha});
  const double rate_floor = 1.0 / (K * em.alpha);

  McEstimate m = mc_expect(mu, f.eval, cfg.samples, cfg.seed);
  auto ev = f.eval;
  const double c = m.mean;
  auto absf = [ev, c](const double* x) { return std::abs(ev(x) - c); };
  std::vector<double> tgrid;
  const double tmax = 3.0 * K * em.alpha;
  for (int j = 1; j <= 12; ++j) tgrid.push_back(tmax * j / 12.0);
  std::vector<double> ses;
  std::vector<double> probs = mc_tail_probs(mu, absf, tgrid, cfg.samples, cfg.seed, &ses);
  // least-squares slope of log p against t over usable points
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  const double pmin = 50.0 / static_cast<double>(cfg.samples);
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    if (probs[i] < pmin) break;
    double x = tgrid[i], y = std::log(probs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  double rate_hat = kNaN;
  if (k >= 3) {
    double denom = k * sxx - sx * sx;
    rate_hat = -(k * sxy - sx * sy) / denom;
  }
  r.extra_params.push_back({"rate_hat", rate_hat});
  r.extra_params.push_back({"fit_points", static_cast<double>(k)});
  r.lhs.value = rate_floor;
  r.rhs.value = rate_hat;
  r.rhs.method = Method::monte_carlo;
  r.rhs.samples = cfg.samples;
  r.samples = cfg.samples;
  r.ratio = std::isfinite(rate_hat) && rate_hat != 0 ? rate_floor / rate_hat : kNaN;
  r.verdict = Verdict::inconclusive;
  r.note = "report-only: universal constant K is a configuration knob, not a proven value";
  return r;
}

}  // namespace heavytail
