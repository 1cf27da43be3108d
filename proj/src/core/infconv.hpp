#pragma once

#include "inequalities.hpp"

namespace heavytail {

// Bregman-type transport cost d(x,y) = V(y) - V(x) - <V'(x), y-x>, nonnegative
// for convex V and vanishing only at y = x.
struct CostOracle {
  Potential potential;
  bool half_line = false;  // restrict y to (0, inf)
  double operator()(const double* x, const double* y) const;
};

CostOracle cost_oracle(const Potential& V);

// log-density potentials used by the Maurey-type product check
Potential w_gaussian(int n);             // |x|^2 / 2
Potential w_exponential(double lambda);  // lambda * x on (0, inf); cost degenerates to 0

// F_eps(x) = inf_y [ G(y) + cost(x,y)/eps ].  Coarse scan plus golden-section
// (coordinate descent in 2D); the search box is seeded from sqrt(eps)(1+|grad G(x)|)
// and auto-expands, raising numeric_error if the objective keeps falling at the
// boundary.  Supports G.dim <= 2; F_eps(x) <= G(x) always.
double infimum_convolution(const ScalarField& G, const CostOracle& cost, double eps,
                           const double* x);

// 1 + beta/(beta-n) E f <= (E (1+g)^{-beta})^{-1/(beta-n)} with f built from g
// by the eps = 1 infimum convolution of gV (admissible by construction; the
// pointwise constraint is re-verified on a 41x41 grid).  Fields unbounded below
// are rejected; fields dipping under -0.9 are shifted up first.
InequalityReport check_thm21(const PotentialMeasure& pm, const ScalarField& g,
                             const CheckConfig& cfg);

// consequence-only form for the constant pair f = g = c > -1 (closed form both
// sides; the pointwise constraint holds only on the diagonal, which is noted)
InequalityReport check_thm21_const(const PotentialMeasure& pm, double c, const CheckConfig& cfg);

// E e^f <= exp(E g) with f the cost-1 infimum convolution of g; w_kind picks
// the gaussian or exponential log-density (1D)
InequalityReport check_cor22(const std::string& w_kind, double lambda, const ScalarField& g,
                             const CheckConfig& cfg);

}  // namespace heavytail
