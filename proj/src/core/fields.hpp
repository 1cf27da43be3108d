#pragma once

#include <functional>
#include <string>
#include <vector>

#include "common.hpp"

namespace heavytail {

// Decay marker for growth degrees: the quantity vanishes faster than any power.
inline constexpr double kDecays = -1000.0;

// Smooth test function g : R^n -> R with gradient and enough metadata to pick
// integration strategies: polynomial growth degrees for integrability checks,
// radial reductions and sphere averages for quadrature under rotationally
// invariant measures.
struct ScalarField {
  std::string name;
  int dim = 1;

  std::function<double(const double*)> eval;
  std::function<void(const double*, double*)> grad;

  // growth degrees: |g(x)| <= C (1+|x|)^value_growth etc. (kDecays if decaying)
  double value_growth = 0;
  double grad_growth = 0;

  double lipschitz = kNaN;     // analytic Lipschitz constant when known
  double min_value = -kInf;    // inf over the domain (for shifted positivity)

  bool radial = false;
  std::function<double(double)> radial_value;      // g at |x| = r
  std::function<double(double)> radial_grad_norm;  // |grad g| at |x| = r

  // sphere averages over the uniform measure on r S^{n-1}; present when the
  // field admits an exact reduction (radial fields and linear forms)
  std::function<double(double)> sphere_avg;
  std::function<double(double)> sphere_avg_sq;
  std::function<double(double)> sphere_avg_gradsq;

  bool has_radial_reduction() const { return static_cast<bool>(sphere_avg); }

  double operator()(const double* x) const { return eval(x); }
  double grad_norm(const double* x) const {
    double g[16];
    grad(x, g);
    double s = 0;
    for (int i = 0; i < dim; ++i) s += g[i] * g[i];
    return std::sqrt(s);
  }
};

// Named gallery: inv1px2, log1px2, linear, x1, smoothabs, gauss, tanh1.
ScalarField gallery_field(const std::string& name, int n);
std::vector<std::string> gallery_names();

// g + c
ScalarField shift_field(const ScalarField& g, double c);
// a * g
ScalarField scale_field(const ScalarField& g, double a);

}  // namespace heavytail
