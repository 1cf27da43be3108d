#include "fields.hpp"

#include <cmath>

namespace heavytail {

namespace {

// fill 1D sphere averages ({-r, r}) from the raw field
void fill_1d_averages(ScalarField& f) {
  auto ev = f.eval;
  auto gr = f.grad;
  f.sphere_avg = [ev](double r) {
    double a = r, b = -r;
    return 0.5 * (ev(&a) + ev(&b));
  };
  f.sphere_avg_sq = [ev](double r) {
    double a = r, b = -r;
    double va = ev(&a), vb = ev(&b);
    return 0.5 * (va * va + vb * vb);
  };
  f.sphere_avg_gradsq = [gr](double r) {
    double a = r, b = -r, ga, gb;
    gr(&a, &ga);
    gr(&b, &gb);
    return 0.5 * (ga * ga + gb * gb);
  };
}

void fill_radial_averages(ScalarField& f) {
  auto v = f.radial_value;
  auto g = f.radial_grad_norm;
  f.sphere_avg = v;
  f.sphere_avg_sq = [v](double r) {
    double t = v(r);
    return t * t;
  };
  f.sphere_avg_gradsq = [g](double r) {
    double t = g(r);
    return t * t;
  };
}

}  // namespace

ScalarField gallery_field(const std::string& name, int n) {
  if (n < 1 || n > 16) throw param_error("gallery_field: n must lie in [1,16]");
  ScalarField f;
  f.name = name;
  f.dim = n;

  if (name == "inv1px2") {
    f.radial = true;
    f.eval = [n](const double* x) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      return 1.0 / (1.0 + r2);
    };
    f.grad = [n](const double* x, double* g) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      double c = -2.0 / ((1.0 + r2) * (1.0 + r2));
      for (int i = 0; i < n; ++i) g[i] = c * x[i];
    };
    f.radial_value = [](double r) { return 1.0 / (1.0 + r * r); };
    f.radial_grad_norm = [](double r) {
      double d = 1.0 + r * r;
      return 2.0 * r / (d * d);
    };
    f.value_growth = -2;
    f.grad_growth = -3;
    f.lipschitz = 3.0 * std::sqrt(3.0) / 8.0;
    f.min_value = 0;
    fill_radial_averages(f);
    return f;
  }

  if (name == "log1px2") {
    f.radial = true;
    f.eval = [n](const double* x) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      return std::log1p(r2);
    };
    f.grad = [n](const double* x, double* g) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      double c = 2.0 / (1.0 + r2);
      for (int i = 0; i < n; ++i) g[i] = c * x[i];
    };
    f.radial_value = [](double r) { return std::log1p(r * r); };
    f.radial_grad_norm = [](double r) { return 2.0 * r / (1.0 + r * r); };
    f.value_growth = 0.01;  // logarithmic
    f.grad_growth = -1;
    f.lipschitz = 1.0;
    f.min_value = 0;
    fill_radial_averages(f);
    return f;
  }

  if (name == "linear" || name == "x1") {
    const double c = (name == "linear") ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    const bool diag = (name == "linear");
    f.eval = [n, c, diag](const double* x) {
      if (!diag) return x[0];
      double s = 0;
      for (int i = 0; i < n; ++i) s += x[i];
      return c * s;
    };
    f.grad = [n, c, diag](const double* x, double* g) {
      (void)x;
      if (!diag) {
        g[0] = 1.0;
        for (int i = 1; i < n; ++i) g[i] = 0.0;
      } else {
        for (int i = 0; i < n; ++i) g[i] = c;
      }
    };
    f.value_growth = 1;
    f.grad_growth = 0;
    f.lipschitz = 1.0;
    f.min_value = -kInf;
    // exact sphere averages of a unit linear form
    f.sphere_avg = [](double) { return 0.0; };
    f.sphere_avg_sq = [n](double r) { return r * r / n; };
    f.sphere_avg_gradsq = [](double) { return 1.0; };
    return f;
  }

  if (name == "smoothabs") {
    const double delta = 1e-3;
    f.radial = true;
    f.eval = [n, delta](const double* x) {
      double r2 = delta * delta;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      return std::sqrt(r2);
    };
    f.grad = [n, delta](const double* x, double* g) {
      double r2 = delta * delta;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      double c = 1.0 / std::sqrt(r2);
      for (int i = 0; i < n; ++i) g[i] = c * x[i];
    };
    f.radial_value = [delta](double r) { return std::sqrt(delta * delta + r * r); };
    f.radial_grad_norm = [delta](double r) {
      return r / std::sqrt(delta * delta + r * r);
    };
    f.value_growth = 1;
    f.grad_growth = 0;
    f.lipschitz = 1.0;
    f.min_value = delta;
    fill_radial_averages(f);
    return f;
  }

  if (name == "gauss") {
    f.radial = true;
    f.eval = [n](const double* x) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      return std::exp(-0.5 * r2);
    };
    f.grad = [n](const double* x, double* g) {
      double r2 = 0;
      for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
      double c = -std::exp(-0.5 * r2);
      for (int i = 0; i < n; ++i) g[i] = c * x[i];
    };
    f.radial_value = [](double r) { return std::exp(-0.5 * r * r); };
    f.radial_grad_norm = [](double r) { return r * std::exp(-0.5 * r * r); };
    f.value_growth = kDecays;
    f.grad_growth = kDecays;
    f.lipschitz = std::exp(-0.5);
    f.min_value = 0;
    fill_radial_averages(f);
    return f;
  }

  if (name == "tanh1") {
    f.eval = [](const double* x) { return std::tanh(x[0]); };
    f.grad = [n](const double* x, double* g) {
      double c = std::cosh(x[0]);
      g[0] = 1.0 / (c * c);
      for (int i = 1; i < n; ++i) g[i] = 0.0;
    };
    f.value_growth = 0;
    f.grad_growth = (n == 1) ? kDecays : 0;
    f.lipschitz = 1.0;
    f.min_value = -1.0;
    if (n == 1) fill_1d_averages(f);
    return f;
  }

  throw param_error("gallery_field: unknown field '" + name + "'");
}

std::vector<std::string> gallery_names() {
  return {"inv1px2", "log1px2", "linear", "x1", "smoothabs", "gauss", "tanh1"};
}

ScalarField shift_field(const ScalarField& g, double c) {
  if (c == 0) return g;
  ScalarField f = g;
  f.name = g.name + "_shift";
  auto ev = g.eval;
  f.eval = [ev, c](const double* x) { return ev(x) + c; };
  if (g.radial_value) {
    auto rv = g.radial_value;
    f.radial_value = [rv, c](double r) { return rv(r) + c; };
  }
  if (g.sphere_avg) {
    auto sa = g.sphere_avg, ss = g.sphere_avg_sq;
    f.sphere_avg = [sa, c](double r) { return sa(r) + c; };
    f.sphere_avg_sq = [sa, ss, c](double r) {
      return ss(r) + 2.0 * c * sa(r) + c * c;
    };
  }
  f.min_value = g.min_value + c;
  if (g.value_growth < 0 || (g.value_growth <= kDecays))
    f.value_growth = 0;  // the constant dominates at infinity
  return f;
}

ScalarField scale_field(const ScalarField& g, double a) {
  if (!std::isfinite(a)) throw param_error("scale_field: factor must be finite");
  ScalarField f = g;
  f.name = g.name + "_scaled";
  auto ev = g.eval;
  auto gr = g.grad;
  f.eval = [ev, a](const double* x) { return a * ev(x); };
  f.grad = [gr, a, n = g.dim](const double* x, double* out) {
    gr(x, out);
    for (int i = 0; i < n; ++i) out[i] *= a;
  };
  if (g.radial_value) {
    auto rv = g.radial_value;
    f.radial_value = [rv, a](double r) { return a * rv(r); };
  }
  if (g.radial_grad_norm) {
    auto rg = g.radial_grad_norm;
    f.radial_grad_norm = [rg, a](double r) { return std::abs(a) * rg(r); };
  }
  if (g.sphere_avg) {
    auto sa = g.sphere_avg, ss = g.sphere_avg_sq, sg = g.sphere_avg_gradsq;
    f.sphere_avg = [sa, a](double r) { return a * sa(r); };
    f.sphere_avg_sq = [ss, a](double r) { return a * a * ss(r); };
    f.sphere_avg_gradsq = [sg, a](double r) { return a * a * sg(r); };
  }
  if (std::isfinite(g.lipschitz)) f.lipschitz = std::abs(a) * g.lipschitz;
  if (a > 0) {
    f.min_value = (g.min_value == -kInf) ? -kInf : a * g.min_value;
  } else if (a == 0) {
    f.min_value = 0;
    f.value_growth = 0;
    f.grad_growth = 0;
    f.lipschitz = 0;
  } else {
    // a negative scale turns the (untracked) supremum into the infimum
    f.min_value = -kInf;
  }
  return f;
}

}  // namespace heavytail
