#include "common.hpp"

#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace heavytail {

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("HEAVYTAIL_THREADS");
  if (env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  return static_cast<int>(hw);
}

double log_unit_ball_volume(int n) {
  if (n < 1) throw param_error("log_unit_ball_volume: n must be >= 1");
  // omega_n = pi^{n/2} / Gamma(n/2 + 1)
  return 0.5 * n * std::log(3.14159265358979323846264338328) - std::lgamma(0.5 * n + 1.0);
}

void spd_solve(int n, const double* A, const double* b, double* x) {
  if (n < 1 || n > 8) throw param_error("spd_solve: n out of range");
  double L[64] = {0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A[i * n + j];
      for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j) {
        if (!(s > 0)) throw numeric_error("spd_solve: matrix not positive definite");
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  double y[8];
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
    y[i] = s / L[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= L[k * n + i] * x[k];
    x[i] = s / L[i * n + i];
  }
}

double spd_inv_quadform(int n, const double* A, const double* v) {
  double x[8];
  spd_solve(n, A, v, x);
  double s = 0;
  for (int i = 0; i < n; ++i) s += x[i] * v[i];
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace heavytail
