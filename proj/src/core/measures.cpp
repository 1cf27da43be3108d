#include "measures.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace heavytail {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

CauchyParams::CauchyParams(int n_, double beta_) : n(n_), beta(beta_) {
  if (n < 1 || n > 16) throw param_error("CauchyParams: n must lie in [1,16]");
  if (!(beta > 0.5 * n) || !std::isfinite(beta))
    throw param_error("CauchyParams: beta must satisfy beta > n/2");
}

double cauchy_log_normalizer(const CauchyParams& p) {
  return 0.5 * p.n * std::log(kPi) + std::lgamma(p.alpha()) - std::lgamma(p.beta);
}

double cauchy_moment_product(const CauchyParams& p, int m) {
  if (m < 0) throw param_error("cauchy_moment_product: m must be >= 0");
  double v = 1.0;
  for (int j = 0; j < m; ++j) v *= (p.alpha() + j) / (p.beta + j);
  return v;
}

Measure Measure::cauchy(int n, double beta) {
  CauchyParams p(n, beta);
  Measure m;
  m.kind_ = Kind::cauchy;
  m.n_ = n;
  m.beta_ = beta;
  m.moment_sup_ = p.d();
  m.log_normalizer_ = cauchy_log_normalizer(p);
  m.shape_ = {[beta](double r) { return -beta * std::log1p(r * r); }, TailKind::heavy};
  m.name_ = "cauchy";
  m.radial_mass_ = radial_integral(n, m.shape_, [](double) { return 1.0; }, 1e-13).value;
  return m;
}

Measure Measure::cauchy_rescaled(int n, double beta) {
  CauchyParams p(n, beta);
  Measure m;
  m.kind_ = Kind::cauchy_rescaled;
  m.n_ = n;
  m.beta_ = beta;
  m.scale_ = std::sqrt(p.d());
  m.moment_sup_ = p.d();
  m.log_normalizer_ = cauchy_log_normalizer(p) + 0.5 * n * std::log(p.d());
  double d = p.d();
  m.shape_ = {[beta, d](double r) { return -beta * std::log1p(r * r / d); },
              TailKind::heavy};
  m.name_ = "cauchy_rescaled";
  m.radial_mass_ = radial_integral(n, m.shape_, [](double) { return 1.0; }, 1e-13).value;
  return m;
}

Measure Measure::gaussian(int n) {
  if (n < 1 || n > 16) throw param_error("gaussian: n must lie in [1,16]");
  Measure m;
  m.kind_ = Kind::gaussian;
  m.n_ = n;
  m.moment_sup_ = kInf;
  m.log_normalizer_ = 0.5 * n * std::log(2.0 * kPi);
  m.shape_ = {[](double r) { return -0.5 * r * r; }, TailKind::light};
  m.name_ = "gaussian";
  m.radial_mass_ = radial_integral(n, m.shape_, [](double) { return 1.0; }, 1e-13).value;
  return m;
}

Measure Measure::exponential(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw param_error("exponential: lambda must be positive");
  Measure m;
  m.kind_ = Kind::exponential;
  m.n_ = 1;
  m.lambda_ = lambda;
  m.moment_sup_ = kInf;
  m.log_normalizer_ = -std::log(lambda);
  m.shape_ = {[lambda](double r) { return -lambda * r; }, TailKind::light};
  m.name_ = "exponential";
  m.radial_mass_ = radial_integral(1, m.shape_, [](double) { return 1.0; }, 1e-13).value;
  return m;
}

Measure Measure::radial_power_potential(int n, double beta,
                                        std::function<double(double)> profile,
                                        double moment_sup, const std::string& name) {
  if (n < 1 || n > 16) throw param_error("radial_power_potential: n must lie in [1,16]");
  if (!(moment_sup > 0))
    throw param_error("radial_power_potential: measure has no finite mass (moment_sup <= 0)");
  Measure m;
  m.kind_ = Kind::radial_potential;
  m.n_ = n;
  m.beta_ = beta;
  m.moment_sup_ = moment_sup;
  auto prof = profile;
  m.shape_ = {[beta, prof](double r) { return -beta * std::log(prof(r)); },
              TailKind::heavy};
  m.name_ = name;
  m.radial_mass_ = radial_integral(n, m.shape_, [](double) { return 1.0; }, 1e-13).value;
  m.log_normalizer_ =
      std::log(n) + log_unit_ball_volume(n) + std::log(m.radial_mass_);

  // inverse-CDF table for sampling, on the u = r^2/(1+r^2) grid
  const int N = 2048;
  auto table = std::make_shared<std::vector<double>>(N + 1, 0.0);
  auto integrand_u = [&](double u) {
    double lu = std::log(u), l1mu = std::log1p(-u);
    double logr = 0.5 * (lu - l1mu);
    double L = (n - 1) * logr - 0.5 * lu - 1.5 * l1mu - std::log(2.0) +
               m.shape_.log_profile(std::exp(logr));
    return std::exp(L);
  };
  auto r_of_u = [](double u) { return std::sqrt(u / (1.0 - u)); };
  auto one = [](double) { return 1.0; };
  // first and last cells hold the endpoint behavior: integrate them adaptively
  (*table)[1] = radial_integral(n, m.shape_, one, 1e-11, 0.0, r_of_u(1.0 / N)).value;
  for (int i = 1; i + 1 < N; ++i) {
    double a = static_cast<double>(i) / N, b = static_cast<double>(i + 1) / N;
    double cell = (b - a) / 6.0 *
                  (integrand_u(a) + 4.0 * integrand_u(0.5 * (a + b)) + integrand_u(b));
    (*table)[i + 1] = (*table)[i] + cell;
  }
  (*table)[N] =
      (*table)[N - 1] +
      radial_integral(n, m.shape_, one, 1e-11, r_of_u((N - 1.0) / N)).value;
  double total = table->back();
  if (!(total > 0) || !std::isfinite(total))
    throw numeric_error("radial_power_potential: sampling table construction failed");
  for (auto& c : *table) c /= total;
  m.cdf_table_ = table;
  return m;
}

TailKind Measure::tail() const { return shape_.tail; }

double Measure::beta() const {
  if (kind_ == Kind::gaussian || kind_ == Kind::exponential)
    throw param_error("Measure::beta: not a power-tailed measure");
  return beta_;
}

double Measure::scale() const { return scale_; }

double Measure::lambda() const {
  if (kind_ != Kind::exponential) throw param_error("Measure::lambda: not exponential");
  return lambda_;
}

double Measure::log_density(const double* x) const {
  double r2 = 0;
  for (int i = 0; i < n_; ++i) r2 += x[i] * x[i];
  if (kind_ == Kind::exponential) {
    if (x[0] <= 0) return -kInf;
    return std::log(lambda_) - lambda_ * x[0];
  }
  return shape_.log_profile(std::sqrt(r2)) - log_normalizer_;
}

const RadialShape& Measure::radial_shape() const { return shape_; }

void Measure::sample(std::uint64_t seed, std::uint64_t index, double* out) const {
  SampleStream s(seed, index);
  switch (kind_) {
    case Kind::cauchy:
    case Kind::cauchy_rescaled: {
      double xi = 0;
      double y[16];
      for (int i = 0; i < n_; ++i) y[i] = s.gaussian();
      xi = s.chi(2.0 * beta_ - n_);
      for (int i = 0; i < n_; ++i) out[i] = scale_ * y[i] / xi;
      return;
    }
    case Kind::gaussian:
      for (int i = 0; i < n_; ++i) out[i] = s.gaussian();
      return;
    case Kind::exponential:
      out[0] = s.exponential() / lambda_;
      return;
    case Kind::radial_potential: {
      const auto& c = *cdf_table_;
      double v = s.uniform();
      auto it = std::upper_bound(c.begin(), c.end(), v);
      std::size_t j = std::min<std::size_t>(
          c.size() - 2, it == c.begin() ? 0 : (it - c.begin()) - 1);
      double frac = (c[j + 1] > c[j]) ? (v - c[j]) / (c[j + 1] - c[j]) : 0.5;
      double u = (j + frac) / (c.size() - 1);
      u = std::min(std::max(u, 1e-300), 1.0 - 1e-16);
      double r = std::sqrt(u / (1.0 - u));
      double norm2 = 0;
      double y[16];
      do {
        norm2 = 0;
        for (int i = 0; i < n_; ++i) {
          y[i] = s.gaussian();
          norm2 += y[i] * y[i];
        }
      } while (!(norm2 > 0));
      double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < n_; ++i) out[i] = r * y[i] * inv;
      return;
    }
  }
  throw param_error("Measure::sample: unknown kind");
}

double Measure::radial_cdf(double r, double rel_tol) const {
  if (!(r > 0)) return 0.0;
  if (!std::isfinite(r)) return 1.0;
  QuadResult head = radial_integral(n_, shape_, [](double) { return 1.0; }, rel_tol, 0.0, r);
  double v = head.value / radial_mass_;
  if (v < 0.5) return std::min(1.0, std::max(0.0, v));
  QuadResult tail = radial_integral(n_, shape_, [](double) { return 1.0; }, rel_tol, r);
  return std::min(1.0, std::max(0.0, 1.0 - tail.value / radial_mass_));
}

double Measure::radial_quantile(double level, double rel_tol) const {
  if (!(level > 0) || !(level < 1))
    throw param_error("radial_quantile: level must lie in (0,1)");
  double hi = 1.0;
  int guard = 0;
  while (radial_cdf(hi, rel_tol) < level) {
    hi *= 4.0;
    if (++guard > 520) throw numeric_error("radial_quantile: failed to bracket the level");
  }
  double lo = 0.0;
  auto f = [&](double r) { return radial_cdf(r, rel_tol) - level; };
  boost::math::tools::eps_tolerance<double> tol(48);
  std::uintmax_t max_iter = 128;
  auto bracket = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
  if (max_iter >= 128)
    throw numeric_error("radial_quantile: root search did not converge");
  return 0.5 * (bracket.first + bracket.second);
}

double Measure::geometric_mean_radius(double rel_tol) const {
  QuadResult q = expect_radial([](double r) { return std::log(r); }, rel_tol);
  return std::exp(q.value);
}

QuadResult Measure::expect_radial(const std::function<double(double)>& phi,
                                  double rel_tol) const {
  QuadResult q = radial_integral(n_, shape_, phi, rel_tol);
  return {q.value / radial_mass_, q.abs_error / radial_mass_ +
                                      std::abs(q.value) * 1e-12 / radial_mass_};
}

QuadResult Measure::expect_radial_band(const std::function<double(double)>& phi,
                                       double r_lo, double r_hi, double rel_tol) const {
  QuadResult q = radial_integral(n_, shape_, phi, rel_tol, r_lo, r_hi);
  return {q.value / radial_mass_, q.abs_error / radial_mass_ +
                                      std::abs(q.value) * 1e-12 / radial_mass_};
}

Potential Potential::quadratic(int n) {
  if (n < 1 || n > 16) throw param_error("Potential::quadratic: bad dimension");
  Potential p;
  p.name = "quadratic";
  p.dim = n;
  p.growth_degree = 2;
  p.eval = [n](const double* x) {
    double s = 1.0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
  };
  p.grad = [n](const double* x, double* g) {
    for (int i = 0; i < n; ++i) g[i] = 2.0 * x[i];
  };
  p.hess = [n](const double* x, double* h) {
    (void)x;
    for (int i = 0; i < n * n; ++i) h[i] = 0.0;
    for (int i = 0; i < n; ++i) h[i * n + i] = 2.0;
  };
  p.radial_profile = [](double r) { return 1.0 + r * r; };
  return p;
}

Potential Potential::smoothed_norm(int n, double delta) {
  if (n < 1 || n > 16) throw param_error("Potential::smoothed_norm: bad dimension");
  if (!(delta > 0)) throw param_error("Potential::smoothed_norm: delta must be positive");
  Potential p;
  p.name = "smoothed_norm";
  p.dim = n;
  p.growth_degree = 1;
  p.eval = [n, delta](const double* x) {
    double s = delta * delta;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return 1.0 + std::sqrt(s);
  };
  p.grad = [n, delta](const double* x, double* g) {
    double s = delta * delta;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    double inv = 1.0 / std::sqrt(s);
    for (int i = 0; i < n; ++i) g[i] = x[i] * inv;
  };
  p.hess = [n, delta](const double* x, double* h) {
    double s = delta * delta;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    double sr = std::sqrt(s), inv = 1.0 / sr, inv3 = 1.0 / (sr * s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        h[i * n + j] = (i == j ? inv : 0.0) - x[i] * x[j] * inv3;
  };
  p.radial_profile = [delta](double r) {
    return 1.0 + std::sqrt(delta * delta + r * r);
  };
  return p;
}

PotentialMeasure make_potential_measure(const Potential& V, double beta) {
  if (V.name == "quadratic")
    return {Measure::cauchy(V.dim, beta), V, beta};
  double moment_sup = V.growth_degree * beta - V.dim;
  if (!(moment_sup > 0))
    throw precondition_error(
        "make_potential_measure: V^{-beta} is not integrable for these parameters");
  return {Measure::radial_power_potential(V.dim, beta, V.radial_profile, moment_sup,
                                          V.name),
          V, beta};
}

}  // namespace heavytail
