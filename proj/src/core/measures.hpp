#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"

namespace heavytail {

// Parameters of the heavy-tailed family with density proportional to
// (1+|x|^2)^{-beta} on R^n.  Requires beta > n/2.
struct CauchyParams {
  int n;
  double beta;

  CauchyParams(int n_, double beta_);

  double d() const { return 2.0 * beta - n; }      // effective degrees of freedom
  double alpha() const { return beta - 0.5 * n; }  // half the decay surplus
  double kappa() const { return -1.0 / d(); }      // optimal convexity exponent
};

// log of Z = pi^{n/2} Gamma(beta - n/2) / Gamma(beta)
double cauchy_log_normalizer(const CauchyParams& p);

// I_m = E (1+|x|^2)^{-m} = prod_{j=0}^{m-1} (alpha+j)/(beta+j)
double cauchy_moment_product(const CauchyParams& p, int m);

class Measure {
 public:
  enum class Kind { cauchy, cauchy_rescaled, gaussian, exponential, radial_potential };

  static Measure cauchy(int n, double beta);
  // pushforward under x -> sqrt(2 beta - n) x; matches the Student-t scaling
  static Measure cauchy_rescaled(int n, double beta);
  static Measure gaussian(int n);
  static Measure exponential(double lambda);  // rate lambda on (0, +inf)
  // density proportional to P(|x|)^{-beta}; P positive, increasing.
  // moment_sup = sup { s : E |x|^s finite } must be supplied by the caller.
  static Measure radial_power_potential(int n, double beta,
                                        std::function<double(double)> profile,
                                        double moment_sup, const std::string& name);

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  TailKind tail() const;
  bool on_half_line() const { return kind_ == Kind::exponential; }
  const std::string& name() const { return name_; }

  double beta() const;    // cauchy kinds and radial_potential only
  double scale() const;   // sqrt(2 beta - n) for cauchy_rescaled, else 1
  double lambda() const;  // exponential only

  double moment_sup() const { return moment_sup_; }

  double log_density(const double* x) const;
  double log_normalizer() const { return log_normalizer_; }
  const RadialShape& radial_shape() const;

  // draws sample #index of the stream opened by seed (thread-safe, stateless)
  void sample(std::uint64_t seed, std::uint64_t index, double* out) const;

  double radial_cdf(double r, double rel_tol = 1e-11) const;
  // inverse of radial_cdf by bracketing root search
  double radial_quantile(double level, double rel_tol = 1e-11) const;
  // m0 = exp(E log |x|)
  double geometric_mean_radius(double rel_tol = 1e-10) const;

  // E phi(|x|), self-normalized against the quadrature mass
  QuadResult expect_radial(const std::function<double(double)>& phi,
                           double rel_tol = 1e-10) const;
  // (1/Z) * integral of phi(|x|) over {r_lo < |x| < r_hi}
  QuadResult expect_radial_band(const std::function<double(double)>& phi, double r_lo,
                                double r_hi, double rel_tol = 1e-10) const;

 private:
  Measure() = default;

  Kind kind_ = Kind::cauchy;
  int n_ = 1;
  double beta_ = kNaN;
  double scale_ = 1.0;
  double lambda_ = kNaN;
  double moment_sup_ = kInf;
  double log_normalizer_ = 0;  // of the full n-dim shape
  double radial_mass_ = 0;     // quadrature of r^{n-1} * profile over (0,inf)
  RadialShape shape_;
  std::string name_;
  std::shared_ptr<const std::vector<double>> cdf_table_;  // radial_potential sampling
};

// Convex positive potential V on R^n with first and second derivatives,
// defining measures with density proportional to V^{-beta}.
struct Potential {
  std::string name;
  int dim = 1;
  double growth_degree = 2;  // V(x) ~ |x|^growth_degree at infinity
  std::function<double(const double*)> eval;
  std::function<void(const double*, double*)> grad;   // length dim
  std::function<void(const double*, double*)> hess;   // row-major dim*dim
  std::function<double(double)> radial_profile;       // V as a function of r

  static Potential quadratic(int n);                  // 1 + |x|^2
  static Potential smoothed_norm(int n, double delta);// 1 + sqrt(delta^2 + |x|^2)
};

struct PotentialMeasure {
  Measure mu;
  Potential V;
  double beta;
};

// Builds the measure with density proportional to V^{-beta}; the quadratic
// potential maps onto the closed-form Cauchy family.
PotentialMeasure make_potential_measure(const Potential& V, double beta);

}  // namespace heavytail
