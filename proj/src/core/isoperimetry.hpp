#pragma once

#include "infconv.hpp"

namespace heavytail {

// Test sets with exact boundary integrals: centered balls and half-spaces.
// Directions are immaterial for the radially symmetric measures here, so a
// half-space is stored as {x . e1 <= offset}.
struct ParametricSet {
  enum class Family { half_space, ball };
  Family family = Family::ball;
  double offset = 0;  // half-space threshold along the axis
  double radius = 1;  // ball radius, > 0

  static ParametricSet half_space(double a);
  static ParametricSet ball(double s);
  std::string family_name() const;
};

// mu(A).  Balls reduce to the radial cdf; half-spaces integrate the spherical
// cap fraction of the direction cosine against the radial law (n = 1 keeps the
// two-sided sign rule).
double set_measure(const Measure& mu, const ParametricSet& A);

// nu(A) for d nu = scale*(r_w + |x|) d mu; the finite-difference derivative of
// this mass in the set parameter recovers the weighted perimeter below
QuadResult weighted_mass(const Measure& mu, const ParametricSet& A, double r_w,
                         double scale = 1.0);

// boundary integral of scale*(r_w + |x|) times the density: closed form for
// balls and 1D half-spaces, a one-dimensional slice quadrature otherwise
double weighted_perimeter(const Measure& mu, const ParametricSet& A, double r_w,
                          double scale = 1.0);

// perimeter lower bound mu(A)^{1-k} (mu(A)^k - mu(B_r)^k)/(-k) <= nu+(A) with
// k = -1/(beta-n)
InequalityReport check_eq56(const Measure& mu, const ParametricSet& A, double r_w,
                            const CheckConfig& cfg);

// Cheeger-type bound mu(A) <= D nu+(A), D = (1-k)/log(2 mu(B_r)); requires
// mu(B_r) > 1/2 and mu(A) <= 1/2
InequalityReport check_eq55(const Measure& mu, const ParametricSet& A, double r_w,
                            const CheckConfig& cfg);

// universal weighted variance bound with weight r^2 + |x|^2, r the 2/3 radial
// quantile, constant (8/log^2(4/3)) (beta-n+1)/(beta-n)
InequalityReport check_thm51(const Measure& mu, const ScalarField& g, const CheckConfig& cfg);

// ratio-only structure probe with weight m0^2 + |x|^2 (m0 the geometric mean
// radius); no verdict since the constant is not pinned down
InequalityReport check_cor52(const Measure& mu, const ScalarField& g, const CheckConfig& cfg);

}  // namespace heavytail
