#include "report.hpp"

#include <cmath>
#include <sstream>

#include "common.hpp"

namespace heavytail {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* method_name(Method m) {
  return m == Method::quadrature ? "quad" : "mc";
}

Verdict decide(double lhs, double lhs_err, double rhs, double rhs_err, double tol) {
  if (std::isnan(lhs) || std::isnan(rhs)) throw numeric_error("verdict: estimate is NaN");
  if (std::isinf(rhs)) return Verdict::holds;  // vacuous
  if (std::isinf(lhs)) throw numeric_error("verdict: infinite lhs against finite rhs");
  // The 3-sigma slack is part of the holds band so that equality cases (lhs == rhs
  // up to estimator noise) do not read as violations; violated therefore means the
  // excess is statistically significant, not explainable by error bars.
  const double bound = rhs + std::fabs(rhs) * tol;
  const double slack = 3.0 * (lhs_err + rhs_err);
  if (lhs <= bound + slack) return Verdict::holds;
  return Verdict::violated;
}

void finalize_report(InequalityReport& r) {
  const double l = r.lhs.value, h = r.rhs.value;
  if (std::isinf(h) && h > 0) {
    r.ratio = std::isfinite(l) ? 0.0 : kNaN;
  } else if (h != 0) {
    r.ratio = l / h;
  } else {
    // both sides numerically zero reads as full slack, not equality
    r.ratio = (std::abs(l) <= 3 * r.lhs.abs_error) ? 0.0 : kInf;
  }
  r.verdict = decide(l, r.lhs.abs_error, h, r.rhs.abs_error, r.tolerance);
}

std::string num_token(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// numbers render bare; non-finite values render as quoted tokens
std::string json_num(double v) {
  if (!std::isfinite(v)) return "\"" + num_token(v) + "\"";
  return format_double(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string to_json(const InequalityReport& r) {
  // single line per report; a space follows each key's colon for readability
  std::ostringstream os;
  os << "{\"id\": \"" << json_escape(r.id) << "\"";
  os << ",\"params\": {\"n\": " << r.n;
  if (!std::isnan(r.beta)) os << ",\"beta\": " << json_num(r.beta);
  for (const auto& [k, v] : r.extra_params) os << ",\"" << json_escape(k) << "\": " << json_num(v);
  os << "}";
  os << ",\"g\": \"" << json_escape(r.g_name) << "\"";
  os << ",\"method\": \"" << r.method << "\"";
  os << ",\"lhs\": {\"value\": " << json_num(r.lhs.value) << ",\"err\": " << json_num(r.lhs.abs_error) << "}";
  os << ",\"rhs\": {\"value\": " << json_num(r.rhs.value) << ",\"err\": " << json_num(r.rhs.abs_error) << "}";
  os << ",\"constant\": " << json_num(r.constant_used);
  os << ",\"ratio\": " << json_num(r.ratio);
  os << ",\"tol\": " << json_num(r.tolerance);
  os << ",\"seed\": " << r.seed;
  os << ",\"samples\": " << r.samples;
  os << ",\"verdict\": \"" << verdict_name(r.verdict) << "\"";
  os << ",\"runtime_ms\": " << r.runtime_ms;
  os << ",\"note\": \"" << json_escape(r.note) << "\"";
  os << "}";
  return os.str();
}

std::string csv_header() {
  return "id,n,beta,g,method,lhs,lhs_err,rhs,rhs_err,constant,ratio,tol,seed,samples,verdict,runtime_ms,params,note";
}

std::string to_csv_row(const InequalityReport& r) {
  std::ostringstream os;
  os << csv_escape(r.id) << "," << r.n << "," << (std::isnan(r.beta) ? "" : num_token(r.beta)) << ","
     << csv_escape(r.g_name) << "," << r.method << "," << num_token(r.lhs.value) << ","
     << num_token(r.lhs.abs_error) << "," << num_token(r.rhs.value) << "," << num_token(r.rhs.abs_error) << ","
     << num_token(r.constant_used) << "," << num_token(r.ratio) << "," << num_token(r.tolerance) << ","
     << r.seed << "," << r.samples << "," << verdict_name(r.verdict) << "," << r.runtime_ms << ",";
  std::string params;
  for (const auto& [k, v] : r.extra_params) {
    if (!params.empty()) params += ";";
    params += k + "=" + num_token(v);
  }
  os << csv_escape(params) << "," << csv_escape(r.note);
  return os.str();
}

}  // namespace heavytail
