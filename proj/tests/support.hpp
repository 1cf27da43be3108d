#pragma once

// Test-side helpers kept deliberately independent of the library's numerics:
// a recursive adaptive-Simpson integrator with algebraic compactification for
// unbounded intervals, plus shell-exec capture for the CLI tests.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <sys/wait.h>

namespace testsupport {

using Fn = std::function<double(double)>;

inline double simpson_rec(const Fn& f, double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate_finite(const Fn& f, double a, double b, double tol = 1e-13) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

// integral over (0, inf) via r = t/(1-t); integrand must decay faster than r^{-2}
// or tend to a finite transformed limit at t -> 1
inline double integrate_half_line(const Fn& f, double tol = 1e-13) {
  auto g = [&f](double t) {
    const double om = 1.0 - t;
    const double v = f(t / om) / (om * om);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate_finite(g, 0.0, 1.0 - 1e-12, tol);
}

inline double integrate_real_line(const Fn& f, double tol = 1e-13) {
  return integrate_half_line([&f](double r) { return f(r) + f(-r); }, tol);
}

// surface area of the unit sphere in R^n
inline double sphere_area(int n) {
  return 2.0 * std::pow(std::acos(-1.0), 0.5 * n) / std::tgamma(0.5 * n);
}

// unnormalized radial mass: int_0^inf phi(r) r^{n-1} (1+r^2)^{-beta} dr times
// the sphere area; phi = 1 gives the normalizer Z
inline double cauchy_radial_integral(int n, double beta, const Fn& phi, double tol = 1e-13) {
  return sphere_area(n) * integrate_half_line(
                              [&](double r) {
                                return phi(r) * std::pow(r, n - 1) *
                                       std::pow(1.0 + r * r, -beta);
                              },
                              tol);
}

// int_0^inf r^{n-1} (1+r^2)^{-b} dr for b > n/2: Simpson head on [0, R] plus a
// binomial-series tail.  Near the divergence threshold the compactified
// integrand has an endpoint singularity that plain Simpson resolves too slowly,
// so the tail is summed in closed form instead.
inline double cauchy_power_mass(int n, double b, double R = 20.0) {
  // split the head so the integrand's peak (always below r = 2 for n <= 3) is
  // sampled before the adaptive recursion decides it has converged
  auto f = [n, b](double r) { return std::pow(r, n - 1) * std::pow(1.0 + r * r, -b); };
  const double head = integrate_finite(f, 0.0, 1.0) + integrate_finite(f, 1.0, 4.0) +
                      integrate_finite(f, 4.0, R);
  // (1+r^2)^{-b} = r^{-2b} sum_k binom(-b,k) r^{-2k}, integrated term by term
  double tail = 0.0, coef = 1.0;
  for (int k = 0; k < 64; ++k) {
    const double term = coef * std::pow(R, n - 2.0 * b - 2.0 * k) / (2.0 * b + 2.0 * k - n);
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    coef *= (-b - k) / (k + 1.0);
  }
  return head + tail;
}

struct ExecResult {
  int code = -1;
  std::string out;
};

// runs a shell command, captures stdout (redirect stderr yourself if needed)
inline ExecResult exec_cmd(const std::string& cmd) {
  ExecResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = ::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int st = ::pclose(p);
  if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
  return r;
}

}  // namespace testsupport
