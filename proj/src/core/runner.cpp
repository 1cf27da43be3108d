#include "runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace heavytail {
namespace {

using nlohmann::json;

double jnum(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_number()) throw param_error(std::string("config field '") + key + "' must be numeric");
  return v.get<double>();
}

int jint(const json& j, const char* key, int dflt) {
  double v = jnum(j, key, dflt);
  int i = static_cast<int>(v);
  if (v != i) throw param_error(std::string("config field '") + key + "' must be an integer");
  return i;
}

std::uint64_t juint(const json& j, const char* key, std::uint64_t dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  double d = jnum(j, key, 0);
  if (d < 0 || d != std::floor(d))
    throw param_error(std::string("config field '") + key + "' must be a nonnegative integer");
  return static_cast<std::uint64_t>(d);
}

std::string jstr(const json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_string()) throw param_error(std::string("config field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool jbool(const json& j, const char* key, bool dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw param_error(std::string("config field '") + key + "' must be a boolean");
  return v.get<bool>();
}

struct CheckSpec {
  std::string id;
  int n = 1;
  double beta = kNaN;
  std::string g;
  CheckConfig cfg;
  std::string format = "json";
  bool timing = false;
  // per-checker extras (NaN / empty means "use the checker default")
  double a = kNaN, b = kNaN;            // prop33 weight
  double lambda = 1.0;                  // exponential rate
  double s = 0.0;                       // log-Sobolev witness slope
  double p = 2.0;                       // moment order
  double c = kNaN;                      // constant-pair level
  double K = 3.0;                       // concentration knob
  double delta = 0.5;                   // smoothed-norm softening
  double scale = kNaN;                  // multiplies the gallery field
  double r = kNaN;                      // weight radius for the set checks
  double offset = 0, radius = 1;        // set parameters
  double tmax_mult = 4.0;
  int points = 20;
  bool toy = false;
  bool center = true;
  std::string kind, w2, measure, potential, family;
};

CheckSpec parse_check(const json& j) {
  if (!j.is_object()) throw param_error("config must be a JSON object");
  CheckSpec sp;
  sp.id = jstr(j, "id", "");
  if (sp.id.empty()) throw param_error("config requires an inequality id");
  sp.n = jint(j, "n", 1);
  sp.beta = jnum(j, "beta", kNaN);
  sp.g = jstr(j, "g", "");
  std::string method = jstr(j, "method", "quad");
  if (method == "quad")
    sp.cfg.method = Method::quadrature;
  else if (method == "mc")
    sp.cfg.method = Method::monte_carlo;
  else
    throw param_error("method must be quad or mc");
  sp.cfg.samples = juint(j, "samples", 1000000);
  sp.cfg.seed = juint(j, "seed", 42);
  sp.cfg.tol = jnum(j, "tol", kNaN);
  sp.format = jstr(j, "format", "json");
  if (sp.format != "json" && sp.format != "csv")
    throw param_error("format must be json or csv");
  sp.timing = jbool(j, "timing", false);

  sp.a = jnum(j, "a", kNaN);
  sp.b = jnum(j, "b", kNaN);
  sp.lambda = jnum(j, "lambda", 1.0);
  sp.s = jnum(j, "s", 0.0);
  sp.p = jnum(j, "p", 2.0);
  sp.c = jnum(j, "c", kNaN);
  sp.K = jnum(j, "K", 3.0);
  sp.delta = jnum(j, "delta", 0.5);
  sp.scale = jnum(j, "scale", kNaN);
  sp.r = jnum(j, "r", kNaN);
  sp.offset = jnum(j, "offset", 0.0);
  sp.radius = jnum(j, "radius", 1.0);
  sp.tmax_mult = jnum(j, "tmax_mult", 4.0);
  sp.points = jint(j, "points", 20);
  sp.toy = jbool(j, "toy", false);
  sp.center = jbool(j, "center", true);
  sp.kind = jstr(j, "kind", "");
  sp.w2 = jstr(j, "w2", "");
  sp.measure = jstr(j, "measure", "");
  sp.potential = jstr(j, "potential", "");
  sp.family = jstr(j, "family", "");
  return sp;
}

ScalarField spec_field(const CheckSpec& sp) {
  if (sp.g.empty())
    throw param_error("check " + sp.id + ": requires a gallery field (g)");
  ScalarField f = gallery_field(sp.g, sp.n);
  if (!std::isnan(sp.scale)) f = scale_field(f, sp.scale);
  return f;
}

Potential spec_potential(const CheckSpec& sp) {
  const std::string p = sp.potential.empty() ? "quadratic" : sp.potential;
  if (p == "quadratic") return Potential::quadratic(sp.n);
  if (p == "smoothed_norm") return Potential::smoothed_norm(sp.n, sp.delta);
  throw param_error("potential must be quadratic or smoothed_norm");
}

PotentialMeasure spec_pm(const CheckSpec& sp) {
  return make_potential_measure(spec_potential(sp), sp.beta);
}

Measure spec_measure(const CheckSpec& sp) {
  const std::string m = sp.measure.empty() ? "cauchy" : sp.measure;
  if (m == "cauchy") return Measure::cauchy(sp.n, sp.beta);
  if (m == "potential") return spec_pm(sp).mu;
  throw param_error("measure must be cauchy or potential");
}

ParametricSet spec_set(const CheckSpec& sp) {
  const std::string fam = sp.family.empty() ? "ball" : sp.family;
  if (fam == "ball") return ParametricSet::ball(sp.radius);
  if (fam == "half_space") return ParametricSet::half_space(sp.offset);
  throw param_error("family must be ball or half_space");
}

double spec_set_weight_radius(const CheckSpec& sp, const Measure& mu) {
  if (!std::isnan(sp.r)) return sp.r;
  return mu.radial_quantile(2.0 / 3.0);
}

InequalityReport dispatch(const CheckSpec& sp) {
  const std::string& id = sp.id;
  if (id == "thm31") return check_thm31(sp.n, sp.beta, spec_field(sp), sp.cfg);
  if (id == "cor32") return check_cor32(sp.n, sp.beta, spec_field(sp), sp.cfg);
  if (id == "eq35") return check_eq35(sp.n, sp.beta, spec_field(sp), sp.cfg);
  if (id == "prop33") return check_prop33(sp.n, sp.beta, sp.a, sp.b, spec_field(sp), sp.cfg);
  if (id == "thm34") return check_thm34(sp.n, sp.beta, spec_field(sp), sp.cfg);
  if (id == "thm23") return check_thm23(spec_pm(sp), spec_field(sp), sp.cfg);
  if (id == "eq211") return check_eq211(sp.n, sp.beta, spec_field(sp), false, sp.center, sp.cfg);
  if (id == "eq212") return check_eq211(sp.n, sp.beta, spec_field(sp), true, sp.center, sp.cfg);
  if (id == "thm24")
    return check_thm24("thm24", sp.kind.empty() ? "gauss" : sp.kind, sp.lambda, sp.n, sp.beta,
                       kNaN, spec_field(sp), sp.cfg);
  if (id == "eq217")
    return check_thm24("eq217", sp.kind.empty() ? "exp" : sp.kind, sp.lambda, 1, 1.0, 6.0,
                       spec_field(sp), sp.cfg);
  if (id == "eq218")
    return check_thm24("eq218", "gauss", sp.lambda, sp.n, static_cast<double>(sp.n), 6.0,
                       spec_field(sp), sp.cfg);
  if (id == "eq39") {
    if (sp.s != 0) return check_eq39(sp.n, nullptr, sp.s, sp.cfg);
    ScalarField f = spec_field(sp);
    return check_eq39(sp.n, &f, 0.0, sp.cfg);
  }
  if (id == "hardy") return check_hardy(sp.beta, sp.toy, sp.cfg);
  if (id == "lower_bound") return check_lower_bound(sp.n, sp.beta, sp.cfg);
  if (id == "thm41")
    return check_thm41(sp.n, sp.beta, spec_field(sp), sp.p,
                       sp.kind.empty() ? "poincare" : sp.kind, sp.cfg);
  if (id == "cor43")
    return check_cor43(sp.measure.empty() ? "gauss" : sp.measure, sp.n, sp.beta,
                       sp.w2.empty() ? "1px2" : sp.w2, spec_field(sp), sp.K, sp.cfg);
  if (id == "thm21") {
    PotentialMeasure pm = spec_pm(sp);
    if (!std::isnan(sp.c)) return check_thm21_const(pm, sp.c, sp.cfg);
    return check_thm21(pm, spec_field(sp), sp.cfg);
  }
  if (id == "cor22")
    return check_cor22(sp.kind.empty() ? "gauss" : sp.kind, sp.lambda, spec_field(sp), sp.cfg);
  if (id == "eq56") {
    Measure mu = spec_measure(sp);
    return check_eq56(mu, spec_set(sp), spec_set_weight_radius(sp, mu), sp.cfg);
  }
  if (id == "eq55") {
    Measure mu = spec_measure(sp);
    return check_eq55(mu, spec_set(sp), spec_set_weight_radius(sp, mu), sp.cfg);
  }
  if (id == "thm51") return check_thm51(spec_measure(sp), spec_field(sp), sp.cfg);
  if (id == "cor52") return check_cor52(spec_measure(sp), spec_field(sp), sp.cfg);
  throw param_error("unknown inequality id '" + id + "'");
}

TailReport dispatch_tails(const CheckSpec& sp) {
  ScalarField f = spec_field(sp);
  return check_cor44(sp.n, sp.beta, f, sp.points, sp.tmax_mult, sp.cfg.samples, sp.cfg.seed);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::holds: return 0;
    case Verdict::violated: return 2;
    default: return 3;
  }
}

template <typename F>
RunResult guarded(F&& body) {
  RunResult out;
  try {
    body(out);
  } catch (const param_error& e) {
    out.exit_code = 1;
    out.error = e.what();
    out.error_category = 1;
  } catch (const precondition_error& e) {
    out.exit_code = 1;
    out.error = e.what();
    out.error_category = 2;
  } catch (const numeric_error& e) {
    out.exit_code = 1;
    out.error = e.what();
    out.error_category = 3;
  } catch (const json::exception& e) {
    out.exit_code = 1;
    out.error = e.what();
    out.error_category = 4;
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.error = e.what();
    out.error_category = 5;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string tails_csv(const TailReport& tr) {
  std::ostringstream os;
  os << "t,bound,empirical,stderr,verdict\n";
  for (const TailPoint& pt : tr.points) {
    os << num_token(pt.t) << ',' << num_token(pt.bound) << ',' << num_token(pt.empirical) << ','
       << num_token(pt.stderr_) << ',' << verdict_name(pt.verdict) << '\n';
  }
  return os.str();
}

RunResult run_check_json(const std::string& cfg_json) {
  return guarded([&](RunResult& out) {
    json j = json::parse(cfg_json);
    CheckSpec sp = parse_check(j);
    if (sp.id == "cor44") {
      out.output = tails_csv(dispatch_tails(sp));
      out.exit_code = 0;
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    InequalityReport r = dispatch(sp);
    if (sp.timing) {
      const auto t1 = std::chrono::steady_clock::now();
      r.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    if (sp.format == "csv")
      out.output = csv_header() + "\n" + to_csv_row(r) + "\n";
    else
      out.output = to_json(r) + "\n";
    out.exit_code = verdict_exit(r.verdict);
  });
}

namespace {

std::vector<double> beta_grid(const json& j, int n) {
  std::vector<double> out;
  auto resolve = [n](const json& v) -> double {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw param_error("beta entries must be numbers or symbols");
    std::string s = v.get<std::string>();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s == "n") return n;
    try {
      size_t pos = 0;
      if (s.size() > 2 && s.rfind("n+", 0) == 0) {
        double k = std::stod(s.substr(2), &pos);
        if (pos == s.size() - 2) return n + k;
      } else if (!s.empty() && s.back() == 'n') {
        double k = std::stod(s.substr(0, s.size() - 1), &pos);
        if (pos == s.size() - 1) return k * n;
      } else if (!s.empty()) {
        double k = std::stod(s, &pos);
        if (pos == s.size()) return k;
      }
    } catch (const std::exception&) {
    }
    throw param_error("unrecognized beta symbol '" + s + "' (use a number, n, n+k or kn)");
  };
  if (!j.is_array()) {
    out.push_back(resolve(j));
    return out;
  }
  for (const auto& v : j) out.push_back(resolve(v));
  std::stable_sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> string_grid(const json& j, const char* what) {
  std::vector<std::string> out;
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
    return out;
  }
  if (!j.is_array()) throw param_error(std::string(what) + " must be a string or list");
  for (const auto& v : j) {
    if (!v.is_string()) throw param_error(std::string(what) + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> int_grid(const json& j, const char* what) {
  std::vector<int> out;
  if (j.is_number()) {
    out.push_back(j.get<int>());
    return out;
  }
  if (!j.is_array()) throw param_error(std::string(what) + " must be a number or list");
  for (const auto& v : j) {
    if (!v.is_number()) throw param_error(std::string(what) + " entries must be numbers");
    out.push_back(v.get<int>());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string error_row(const CheckSpec& sp, const std::string& msg) {
  std::ostringstream os;
  os << sp.id << ',' << sp.n << ',' << num_token(sp.beta) << ',' << csv_field(sp.g) << ','
     << (sp.cfg.method == Method::quadrature ? "quad" : "mc")
     << ",nan,nan,nan,nan,nan,nan," << num_token(resolved_tol(sp.cfg)) << ',' << sp.cfg.seed
     << ",0,error,0,," << csv_field(msg);
  return os.str();
}

}  // namespace

RunResult run_sweep_csv(const std::string& cfg_json) {
  return guarded([&](RunResult& out) {
    json j = json::parse(cfg_json);
    if (!j.is_object()) throw param_error("config must be a JSON object");
    if (!j.contains("id")) throw param_error("sweep requires an inequality id (or list)");
    std::vector<std::string> ids = string_grid(j.at("id"), "id");
    std::vector<int> ns = j.contains("n") ? int_grid(j.at("n"), "n") : std::vector<int>{1};
    std::vector<std::string> gs =
        j.contains("g") ? string_grid(j.at("g"), "g") : std::vector<std::string>{""};
    if (std::find(gs.begin(), gs.end(), "all") != gs.end()) {
      std::vector<std::string> expanded = gallery_names();
      for (const std::string& g : gs)
        if (g != "all") expanded.push_back(g);
      std::sort(expanded.begin(), expanded.end());
      expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
      gs = std::move(expanded);
    }

    std::vector<CheckSpec> cells;
    json cell_cfg = j;
    cell_cfg.erase("id");
    cell_cfg.erase("n");
    if (cell_cfg.contains("beta")) cell_cfg.erase("beta");
    if (cell_cfg.contains("g")) cell_cfg.erase("g");
    for (const std::string& id : ids) {
      for (int n : ns) {
        std::vector<double> betas =
            j.contains("beta") ? beta_grid(j.at("beta"), n) : std::vector<double>{kNaN};
        for (double beta : betas) {
          for (const std::string& g : gs) {
            json c = cell_cfg;
            c["id"] = id;
            c["n"] = n;
            if (!std::isnan(beta)) c["beta"] = beta;
            if (!g.empty()) c["g"] = g;
            cells.push_back(parse_check(c));
          }
        }
      }
    }

    std::vector<std::string> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const int workers =
        std::max(1, std::min<int>(worker_count(), static_cast<int>(cells.size())));
    auto work = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          rows[i] = to_csv_row(dispatch(cells[i]));
        } catch (const std::exception& e) {
          rows[i] = error_row(cells[i], e.what());
        }
      }
    };
    if (workers <= 1 || cells.size() <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    std::ostringstream os;
    os << csv_header() << '\n';
    for (const std::string& row : rows) os << row << '\n';
    out.output = os.str();
    out.exit_code = 0;
  });
}

RunResult run_tails_csv(const std::string& cfg_json) {
  return guarded([&](RunResult& out) {
    json j = json::parse(cfg_json);
    if (j.is_object() && !j.contains("id")) j["id"] = "cor44";
    CheckSpec sp = parse_check(j);
    if (sp.id != "cor44")
      throw param_error("tails: only the three-regime experiment (id cor44) is available");
    out.output = tails_csv(dispatch_tails(sp));
    out.exit_code = 0;
  });
}

}  // namespace heavytail
