#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "integrate.hpp"

namespace heavytail {

enum class Verdict { holds, violated, inconclusive };

const char* verdict_name(Verdict v);
const char* method_name(Method m);

// Decision rule: the claim "lhs <= rhs" is accepted up to a relative tolerance
// on the right-hand side plus a 3-sigma numerical slack band, so estimator
// noise never produces a false violation; an inconclusive verdict is reserved
// for checkers whose hypotheses could not be confirmed.
Verdict decide(double lhs, double lhs_err, double rhs, double rhs_err, double tol);

struct InequalityReport {
  std::string id;
  int n = 1;
  double beta = kNaN;  // NaN when the measure has no beta (omitted from output)
  std::vector<std::pair<std::string, double>> extra_params;
  std::string g_name;
  std::string method;  // requested integration method ("quad" or "mc")
  IntegralEstimate lhs, rhs;
  double constant_used = kNaN;
  double ratio = kNaN;
  double tolerance = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  Verdict verdict = Verdict::inconclusive;
  std::int64_t runtime_ms = 0;
  std::string note;
};

// computes ratio + verdict from the stored estimates; infinite rhs gives a
// vacuous hold and non-finite lhs against finite rhs raises numeric_error
void finalize_report(InequalityReport& r);

std::string to_json(const InequalityReport& r);
std::string csv_header();
std::string to_csv_row(const InequalityReport& r);

// number formatting for output files: %.17g, non-finite spelled inf/-inf/nan
std::string num_token(double v);

}  // namespace heavytail
