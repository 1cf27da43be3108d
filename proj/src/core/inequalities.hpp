#pragma once

#include <functional>
#include <string>

#include "integrate.hpp"
#include "report.hpp"

namespace heavytail {

struct CheckConfig {
  Method method = Method::quadrature;
  double rel_tol = 1e-10;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  double tol = kNaN;  // verdict tolerance; NaN picks 1e-6 (quadrature) or 0 (MC)
};

double resolved_tol(const CheckConfig& c);
EvalConfig eval_config(const CheckConfig& c);

// report skeleton shared by all checkers
InequalityReport base_report(const std::string& id, int n, double beta, const ScalarField* g,
                             const CheckConfig& cfg);
// assigns both sides, scales rhs by the constant, merges notes, decides verdict
void set_sides(InequalityReport& r, IntegralEstimate lhs, IntegralEstimate rhs, double constant);
// marks the report as a vacuous hold because the right-hand side diverges
void set_vacuous(InequalityReport& r, IntegralEstimate lhs, double constant,
                 const std::string& why);

// (sqrt(1 + 2/(beta-1)) + sqrt(2/(beta-1)))^2, the weighted-Poincare constant;
// +inf at beta = 1, decreasing to 1 as beta -> inf
double poincare_cbeta(double beta);
// (1 + sqrt(beta+1))^2 / beta, the modified-metric Poincare constant, in (1, 6)
double metric_cbeta(double beta);

// Var <= C_beta/(2(beta-1)) * E |grad g|^2 (1+|x|^2)   [beta >= n]
InequalityReport check_thm31(int n, double beta, const ScalarField& g, const CheckConfig& cfg);
// inf_c E (g-c)^2/(1+|x|^2) <= (1/(2 beta)) E |grad g|^2   [beta >= n+1]
InequalityReport check_cor32(int n, double beta, const ScalarField& g, const CheckConfig& cfg);
// same lhs, constant (n+2)^2/(2(n+1)(beta+1)(2beta-n))   [n/2 < beta <= n+1]
InequalityReport check_eq35(int n, double beta, const ScalarField& g, const CheckConfig& cfg);
// weight a + b|x|^2 with b < 1; NaN a or b selects the proven default
// 3 C_beta / (2(beta-1)); the hypothesis (median) inequality is demoted to a
// numerical pre-check whose failure gives an inconclusive verdict
InequalityReport check_prop33(int n, double beta, double a, double b, const ScalarField& g,
                              const CheckConfig& cfg);
// Ent(g^2) <= 1/(beta-1) E |grad g|^2 (1+|x|^2)^2   [beta >= (n+1)/2, beta > 1]
InequalityReport check_thm34(int n, double beta, const ScalarField& g, const CheckConfig& cfg);

// (beta+1) Var <= E <V''^{-1} grad G, grad G>/V + n/(beta-n) (E g)^2, G = V g
InequalityReport check_thm23(const PotentialMeasure& pm, const ScalarField& g,
                             const CheckConfig& cfg);

// E G^2 d mu_{beta+1} <= (1/beta)(Z_beta/Z_{beta+1}) E <V''^{-1} grad G, grad G> d mu_beta
// for mean-zero G; c_variant replaces V''^{-1} by Id/c with c = 2 (quadratic
// potential), reported under id eq212
InequalityReport check_eq211(int n, double beta, const ScalarField& g, bool c_variant,
                             bool auto_center, const CheckConfig& cfg);

// Var <= C_beta E <R^{-1} grad g, grad g>, R = W'' + W' (x) W' / beta.
// w_kind "exp" is the rate-lambda measure on (0,inf); "gauss" the standard
// normal on R^n.  constant_override (non-NaN) replaces C_beta, serving the
// fixed-constant displays (ids eq217 / eq218).
InequalityReport check_thm24(const std::string& id, const std::string& w_kind, double lambda,
                             int n, double beta, double constant_override, const ScalarField& g,
                             const CheckConfig& cfg);

// Gaussian log-Sobolev reference: Ent(g^2) <= 2 E |grad g|^2 under the
// standard normal; s != 0 swaps in the extremal witness exp(s x1 / 2)
InequalityReport check_eq39(int n, const ScalarField* g, double s, const CheckConfig& cfg);

// B = sup_{x>0} int_0^x dt/q * int_x^inf p dt  (log-grid scan + golden section)
double hardy_constant_B(const std::function<double(double)>& p_weight,
                        const std::function<double(double)>& q_weight, double* argmax = nullptr);
// p = (1+x^2)^{-beta}, q = (1+x^2)^{-(beta-1)}, bound 1/max(2(beta-1), 1);
// toy swaps in q = 1, p = e^{-t} whose supremum is exactly 1/e
InequalityReport check_hardy(double beta, bool toy, const CheckConfig& cfg);

// sharpness floor of the weighted Poincare constant: the measured
// variance/Dirichlet ratio for g = 1/(1+|x|^2) against (beta+2)/(4 beta (alpha+1))
// and the cruder floor 1/(4 beta)
InequalityReport check_lower_bound(int n, double beta, const CheckConfig& cfg);

}  // namespace heavytail
