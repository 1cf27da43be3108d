#pragma once

#include <functional>

#include "common.hpp"

namespace heavytail {

struct QuadResult {
  double value = 0;
  double abs_error = 0;
};

enum class TailKind { heavy, light };

// Density profile of a radially symmetric measure, as a function of r = |x|.
// log_profile must stay NaN-free for arbitrarily large r (-inf is fine).
struct RadialShape {
  std::function<double(double)> log_profile;
  TailKind tail = TailKind::heavy;
};

// integral over [a,b] (tanh-sinh; endpoint singularities allowed)
QuadResult quad_finite(const std::function<double(double)>& f, double a, double b,
                       double rel_tol = 1e-10);

// integral over (a, +inf) of an exponentially decaying integrand (exp-sinh)
QuadResult quad_half_line(const std::function<double(double)>& f, double a,
                          double rel_tol = 1e-10);

// integral over the whole real line (sinh-sinh)
QuadResult quad_real_line(const std::function<double(double)>& f,
                          double rel_tol = 1e-10);

// integral over (r_lo, r_hi) of  phi(r) * r^(n-1) * exp(shape.log_profile(r)) dr.
//
// Heavy tails go through u = r^2/(1+r^2), which maps polynomial decay to an
// endpoint-algebraic integrand on (u_lo, 1) that tanh-sinh resolves; the
// exponent is assembled in log space so near-divergent tails keep their mass.
// Light tails use exp-sinh directly.
QuadResult radial_integral(int n, const RadialShape& shape,
                           const std::function<double(double)>& phi,
                           double rel_tol = 1e-10, double r_lo = 0.0,
                           double r_hi = kInf);

}  // namespace heavytail
