#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fields.hpp"
#include "measures.hpp"

namespace heavytail {

enum class Method { quadrature, monte_carlo };

struct IntegralEstimate {
  double value = 0;
  Method method = Method::quadrature;
  double abs_error = 0;  // quadrature error estimate, or one MC standard error
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string note;  // numerical diagnostics (clamping etc.), usually empty
};

struct EvalConfig {
  Method method = Method::quadrature;
  double rel_tol = 1e-10;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
};

// strict moment test: does E (1+|x|)^growth diverge under mu?
bool integral_diverges(const Measure& mu, double growth);

// average of f over the sphere of radius r (exact quadrature, n <= 3)
double sphere_average(const std::function<double(const double*)>& f, int n, double r);
bool sphere_average_supported(int n);

// E_mu[F].  radial_profile, when non-null, is used as an exact radial
// reduction; otherwise a sphere-average reduction is built for n <= 3.
// Quadrature requests that cannot be reduced fall back to Monte Carlo,
// recorded in the estimate's method field.
IntegralEstimate expect(const Measure& mu, const std::function<double(const double*)>& F,
                        const std::function<double(double)>& radial_profile,
                        const EvalConfig& cfg);

IntegralEstimate mean_field(const Measure& mu, const ScalarField& g, const EvalConfig& cfg);

// Var_mu(g), clamped at zero when roundoff cancellation dips below
IntegralEstimate variance(const Measure& mu, const ScalarField& g, const EvalConfig& cfg);

// E |grad g|^2 w(|x|)  (pass w = nullptr for the unweighted Dirichlet integral)
IntegralEstimate dirichlet_weighted(const Measure& mu, const ScalarField& g,
                                    const std::function<double(double)>& w,
                                    const EvalConfig& cfg);

// Ent_mu(g^2) = E g^2 log g^2 - E g^2 log E g^2
IntegralEstimate entropy_sq(const Measure& mu, const ScalarField& g, const EvalConfig& cfg);

// (E |g - c|^p)^{1/p}
IntegralEstimate lp_norm(const Measure& mu, const ScalarField& g, double c, double p,
                         const EvalConfig& cfg);

// inf_c E (g-c)^2 / (a + b|x|^2) together with the minimizing shift c*.
// Closed-form minimization: c* = E[g/w] / E[1/w] with w = a + b|x|^2.
struct BestShift {
  double c_star = 0;
  IntegralEstimate value;
};
BestShift best_shift_weighted_norm(const Measure& mu, const ScalarField& g, double a, double b,
                                   const EvalConfig& cfg);

}  // namespace heavytail
