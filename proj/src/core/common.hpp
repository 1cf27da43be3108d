#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace heavytail {

// Invalid argument values (bad dimension, parameter out of range, unknown name).
class param_error : public std::runtime_error {
 public:
  explicit param_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mathematical hypotheses of an operation not satisfied by the inputs.
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-convergence, divergent integral, failed root bracket.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw param_error(msg);
}

// Worker cap for parallel sections, from HEAVYTAIL_THREADS (default: hw threads).
int worker_count();

// log of the volume of the unit ball in R^n.
double log_unit_ball_volume(int n);

// Solve A x = b for symmetric positive definite A (row-major n*n), n <= 8.
// Throws numeric_error if A is not positive definite.
void spd_solve(int n, const double* A, const double* b, double* x);

// <A^{-1} v, v> for SPD A.
double spd_inv_quadform(int n, const double* A, const double* v);

std::string format_double(double v);  // shortest round-trip-ish, %.17g

}  // namespace heavytail
