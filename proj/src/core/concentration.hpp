#pragma once

#include <vector>

#include "inequalities.hpp"

namespace heavytail {

// E (1 + |x|^2/(2 beta - n))^q under the rescaled measure, by the closed
// product prod_{j=1}^{q} (beta - j)/(alpha - j); requires integer q < alpha
double rescaled_even_moment(int n, double beta, int q);

// L^{2q} norm of the transport weight.  Plain: returns the even moment above.
// With scale15, applies the factor-15 weight w^2 = 15 (1 + |x|^2/d), giving
// ||w||_{2q} = (15^q * product)^{1/(2q)}.
double weight_norm_wp(int n, double beta, int q, bool scale15);

// ||w||_p for real p >= 1 by radial quadrature (weights as in check_thm41)
double weight_norm_quad(int n, double beta, double p, const std::string& kind);

// centered moment growth ||f||_p <= (p/sqrt2)||w||_p (poincare) or
// sqrt(p-1)||w||_p (lsi) under the rescaled measure
InequalityReport check_thm41(int n, double beta, const ScalarField& g, double p,
                             const std::string& kind, const CheckConfig& cfg);

struct TailEnvelope {
  std::string kind;  // poincare | lsi | cauchy3
  double C = kNaN;
  double p = kNaN;
  double t0 = kNaN;  // end of the gaussian branch (lsi, cauchy3)
  double t1 = kNaN;  // exponential-to-power crossover (poincare, cauchy3)
  double operator()(double t) const;
};

TailEnvelope envelope_poincare(double C, double p);
TailEnvelope envelope_lsi(double C, double p);
TailEnvelope envelope_cauchy3(int n, double beta);

// log-spaced grid across the envelope's regimes, breakpoints forced in
std::vector<double> tail_tgrid(const TailEnvelope& env, int points, double tmax_mult);

struct TailPoint {
  double t = 0;
  double bound = 0;
  double empirical = 0;
  double stderr_ = 0;
  Verdict verdict = Verdict::holds;
};

struct TailReport {
  std::string id;
  int n = 1;
  double beta = kNaN;
  std::string g_name;
  TailEnvelope env;
  double center = 0;      // empirical mean subtracted from f
  double center_se = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<TailPoint> points;
  Verdict verdict = Verdict::holds;  // worst point
  std::string note;
};

// empirical P(|f - mean| >= t) against the envelope; a point holds when
// empirical <= bound(t - 3 se_mean) + 3 se_t (center noise folded into slack)
TailReport empirical_tail(const Measure& mu, const ScalarField& f, const TailEnvelope& env,
                          const std::vector<double>& tgrid, std::uint64_t samples,
                          std::uint64_t seed);

// three-regime tail experiment under the rescaled measure (beta >= n+1)
TailReport check_cor44(int n, double beta, const ScalarField& f, int points, double tmax_mult,
                       std::uint64_t samples, std::uint64_t seed);

struct ExpMomentResult {
  bool divergent = false;
  double alpha = kNaN;  // smallest alpha with E exp(w^2/alpha) <= 2
};

// w2 is the radial profile of the squared weight, w2_growth its degree
ExpMomentResult exp_moment_alpha(const Measure& mu, const std::function<double(double)>& w2,
                                 double w2_growth);

// report-only exponential-concentration shape check: compares the fitted MC
// tail rate with 1/(K alpha*); always inconclusive since K is a free knob
InequalityReport check_cor43(const std::string& measure_kind, int n, double beta,
                             const std::string& w2_kind, const ScalarField& f, double K,
                             const CheckConfig& cfg);

}  // namespace heavytail
