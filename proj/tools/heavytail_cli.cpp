// Command-line front end: builds a JSON spec from flags, hands it to the
// library runners, and aggregates previously written report artifacts.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "heavytail/heavytail.h"

namespace {

using nlohmann::ordered_json;

// collects CLI options and copies only the ones actually set into the spec
class CfgBuilder {
 public:
  explicit CfgBuilder(CLI::App* cmd) : cmd_(cmd) {}

  void num(const std::string& flag, const std::string& key, const std::string& desc) {
    auto v = std::make_shared<double>(0.0);
    CLI::Option* opt = cmd_->add_option(flag, *v, desc);
    setters_.push_back([opt, v, key](ordered_json& j) {
      if (opt->count() > 0) j[key] = *v;
    });
  }

  void integer(const std::string& flag, const std::string& key, const std::string& desc) {
    auto v = std::make_shared<int>(0);
    CLI::Option* opt = cmd_->add_option(flag, *v, desc);
    setters_.push_back([opt, v, key](ordered_json& j) {
      if (opt->count() > 0) j[key] = *v;
    });
  }

  void uinteger(const std::string& flag, const std::string& key, const std::string& desc) {
    auto v = std::make_shared<std::uint64_t>(0);
    CLI::Option* opt = cmd_->add_option(flag, *v, desc);
    setters_.push_back([opt, v, key](ordered_json& j) {
      if (opt->count() > 0) j[key] = *v;
    });
  }

  void str(const std::string& flag, const std::string& key, const std::string& desc) {
    auto v = std::make_shared<std::string>();
    CLI::Option* opt = cmd_->add_option(flag, *v, desc);
    setters_.push_back([opt, v, key](ordered_json& j) {
      if (opt->count() > 0) j[key] = *v;
    });
  }

  void toggle(const std::string& flag, const std::string& key, const std::string& desc) {
    auto v = std::make_shared<bool>(false);
    CLI::Option* opt = cmd_->add_flag(flag, *v, desc);
    setters_.push_back([opt, v, key](ordered_json& j) {
      if (opt->count() > 0) j[key] = *v;
    });
  }

  void apply(ordered_json& j) const {
    for (const auto& s : setters_) s(j);
  }

 private:
  CLI::App* cmd_;
  std::vector<std::function<void(ordered_json&)>> setters_;
};

void add_common_knobs(CfgBuilder& b) {
  b.str("--method", "method", "integration backend: quad or mc");
  b.uinteger("--samples", "samples", "Monte Carlo sample count");
  b.uinteger("--seed", "seed", "Monte Carlo stream seed");
  b.num("--tol", "tol", "relative tolerance of the verdict rule");
}

void add_checker_knobs(CfgBuilder& b) {
  b.num("--a", "a", "constant term of the comparison weight");
  b.num("--b", "b", "quadratic coefficient of the comparison weight");
  b.num("--lambda", "lambda", "exponential rate");
  b.num("--s", "s", "log-Sobolev witness slope exp(s x1 / 2)");
  b.num("--p", "p", "moment order");
  b.num("--c", "c", "constant-pair level");
  b.num("--K", "K", "exponential-concentration knob");
  b.num("--delta", "delta", "smoothed-norm softening");
  b.num("--scale", "scale", "multiplies the gallery field");
  b.num("--r", "r", "weight radius of the set checks (default: 2/3 quantile)");
  b.num("--offset", "offset", "half-space threshold");
  b.num("--radius", "radius", "ball radius");
  b.num("--tmax-mult", "tmax_mult", "tail grid extension factor");
  b.integer("--points", "points", "tail grid size");
  b.toggle("--toy", "toy", "closed-form toy weights");
  b.toggle("--no-center,!--center", "no_center", "skip mean-centering");
  b.str("--kind", "kind", "checker variant (gauss/exp or poincare/lsi)");
  b.str("--w2", "w2", "squared weight profile: const, 1px2 or 1px2sq");
  b.str("--measure", "measure", "measure family: cauchy, potential or gauss");
  b.str("--potential", "potential", "potential shape: quadratic or smoothed_norm");
  b.str("--family", "family", "set family: ball or half_space");
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return 1;
  }
  os << text;
  return os ? 0 : 1;
}

using Runner = ht_status (*)(const char*, char**, int*);

int run_spec(Runner fn, const ordered_json& spec, const std::string& out_path) {
  char* text = nullptr;
  int exit_code = 0;
  ht_status st = fn(spec.dump().c_str(), &text, &exit_code);
  if (st != HT_OK) {
    std::cerr << "error: " << ht_last_error() << "\n";
    return 1;
  }
  std::string payload(text);
  ht_string_free(text);
  int io = emit(payload, out_path);
  return io != 0 ? io : exit_code;
}

// ---- report aggregation ----

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct VerdictCounts {
  int holds = 0, violated = 0, inconclusive = 0, error = 0;
  void add(const std::string& v) {
    if (v == "holds")
      ++holds;
    else if (v == "violated")
      ++violated;
    else if (v == "inconclusive")
      ++inconclusive;
    else
      ++error;
  }
  ordered_json to_json() const {
    return ordered_json{
        {"holds", holds}, {"violated", violated}, {"inconclusive", inconclusive},
        {"error", error}};
  }
};

struct WorstEntry {
  std::string id, g;
  double n = 0, beta = std::nan("");
  double ratio = 0;
};

struct TailsAccum {
  std::vector<std::array<double, 3>> rows;  // t, bound, empirical
  int violated = 0;
};

double parse_token(const std::string& s) {
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s == "nan" || s.empty()) return std::nan("");
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

int run_report(const std::vector<std::string>& files, const std::string& out_path,
               const std::string& plots_prefix) {
  VerdictCounts total;
  std::map<std::string, VerdictCounts> by_id;
  std::vector<WorstEntry> worst;
  TailsAccum tails;
  bool tails_seen = false;

  for (const std::string& path : files) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
      std::cerr << "error: cannot read '" << path << "'\n";
      return 1;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();
    std::size_t start = text.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) {
      std::cerr << "error: '" << path << "' is empty\n";
      return 1;
    }
    if (text[start] == '{') {
      ordered_json j;
      try {
        j = ordered_json::parse(text);
      } catch (const std::exception& e) {
        std::cerr << "error: '" << path << "': " << e.what() << "\n";
        return 1;
      }
      const std::string id = j.value("id", "unknown");
      const std::string verdict = j.value("verdict", "error");
      total.add(verdict);
      by_id[id].add(verdict);
      WorstEntry w;
      w.id = id;
      w.g = j.value("g", "");
      if (j.contains("params") && j["params"].is_object()) {
        w.n = j["params"].value("n", 0.0);
        if (j["params"].contains("beta") && j["params"]["beta"].is_number())
          w.beta = j["params"]["beta"].get<double>();
      }
      const auto& rj = j.contains("ratio") ? j["ratio"] : ordered_json();
      w.ratio = rj.is_number() ? rj.get<double>()
                               : rj.is_string() ? parse_token(rj.get<std::string>())
                                                : std::nan("");
      if (std::isfinite(w.ratio)) worst.push_back(w);
      continue;
    }
    // CSV artifacts
    std::istringstream lines(text);
    std::string header;
    if (!std::getline(lines, header)) {
      std::cerr << "error: '" << path << "' has no header\n";
      return 1;
    }
    if (!header.empty() && header.back() == '\r') header.pop_back();
    std::vector<std::string> cols = split_csv_line(header);
    std::map<std::string, int> at;
    for (int i = 0; i < static_cast<int>(cols.size()); ++i) at[cols[i]] = i;
    std::string line;
    if (at.count("id") && at.count("verdict")) {
      const bool has_ratio = at.count("ratio") > 0;
      while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() < cols.size()) continue;
        const std::string id = f[at["id"]];
        const std::string verdict = f[at["verdict"]];
        total.add(verdict);
        by_id[id].add(verdict);
        if (has_ratio) {
          WorstEntry w;
          w.id = id;
          w.g = at.count("g") ? f[at["g"]] : "";
          w.n = at.count("n") ? parse_token(f[at["n"]]) : 0.0;
          w.beta = at.count("beta") ? parse_token(f[at["beta"]]) : std::nan("");
          w.ratio = parse_token(f[at["ratio"]]);
          if (std::isfinite(w.ratio)) worst.push_back(w);
        }
      }
    } else if (at.count("t") && at.count("bound") && at.count("empirical")) {
      tails_seen = true;
      while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() < cols.size()) continue;
        tails.rows.push_back({parse_token(f[at["t"]]), parse_token(f[at["bound"]]),
                              parse_token(f[at["empirical"]])});
        const std::string verdict = at.count("verdict") ? f[at["verdict"]] : "holds";
        if (verdict == "violated") ++tails.violated;
        total.add(verdict);
        by_id["cor44"].add(verdict);
      }
    } else {
      std::cerr << "error: '" << path << "' is neither a report nor a tails artifact\n";
      return 1;
    }
  }

  std::stable_sort(worst.begin(), worst.end(),
                   [](const WorstEntry& a, const WorstEntry& b) { return a.ratio > b.ratio; });
  if (worst.size() > 5) worst.resize(5);

  ordered_json summary;
  summary["files"] = files.size();
  summary["counts"] = total.to_json();
  ordered_json ids = ordered_json::object();
  for (const auto& [id, counts] : by_id) ids[id] = counts.to_json();
  summary["by_id"] = ids;
  ordered_json warr = ordered_json::array();
  for (const WorstEntry& w : worst) {
    ordered_json e;
    e["id"] = w.id;
    e["n"] = w.n;
    if (std::isfinite(w.beta)) e["beta"] = w.beta;
    e["g"] = w.g;
    e["ratio"] = w.ratio;
    warr.push_back(e);
  }
  summary["worst"] = warr;
  if (tails_seen)
    summary["tails"] =
        ordered_json{{"points", tails.rows.size()}, {"violated", tails.violated}};

  if (tails_seen && !plots_prefix.empty()) {
    std::ostringstream bound, emp;
    bound << "t,bound\n";
    emp << "t,empirical\n";
    for (const auto& row : tails.rows) {
      bound << row[0] << ',' << row[1] << '\n';
      emp << row[0] << ',' << row[2] << '\n';
    }
    if (emit(bound.str(), plots_prefix + "_bound.csv") != 0) return 1;
    if (emit(emp.str(), plots_prefix + "_empirical.csv") != 0) return 1;
  }

  return emit(summary.dump(2) + "\n", out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of weighted functional inequalities on "
               "heavy-tailed measures"};
  app.require_subcommand(1);

  // check
  CLI::App* check = app.add_subcommand("check", "run one inequality check");
  std::string check_id;
  check->add_option("id", check_id, "inequality id (e.g. thm31, cor44, eq56)")->required();
  CfgBuilder check_b(check);
  check_b.integer("--n", "n", "dimension");
  check_b.num("--beta", "beta", "tail exponent");
  check_b.str("--g", "g", "gallery field name");
  add_common_knobs(check_b);
  check_b.str("--format", "format", "output format: json or csv");
  check_b.toggle("--timing", "timing", "record wall-clock runtime");
  add_checker_knobs(check_b);
  std::string check_out;
  check->add_option("--out", check_out, "write the report here instead of stdout");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "grid of checks as one CSV");
  std::vector<std::string> sweep_ids;
  sweep->add_option("id", sweep_ids, "inequality ids")->required();
  std::vector<int> sweep_n;
  sweep->add_option("--n", sweep_n, "dimensions")->delimiter(',');
  std::vector<std::string> sweep_beta;
  sweep->add_option("--beta", sweep_beta, "tail exponents (numbers, n, n+k, kn)")
      ->delimiter(',');
  std::vector<std::string> sweep_g;
  sweep->add_option("--g", sweep_g, "gallery field names ('all' expands)")->delimiter(',');
  CfgBuilder sweep_b(sweep);
  add_common_knobs(sweep_b);
  add_checker_knobs(sweep_b);
  std::string sweep_out;
  sweep->add_option("--out", sweep_out, "write the CSV here instead of stdout");

  // tails
  CLI::App* tails = app.add_subcommand("tails", "three-regime tail experiment");
  CfgBuilder tails_b(tails);
  tails_b.integer("--n", "n", "dimension");
  tails_b.num("--beta", "beta", "tail exponent");
  tails_b.str("--g", "g", "gallery field name");
  tails_b.integer("--points", "points", "tail grid size");
  tails_b.num("--tmax-mult", "tmax_mult", "tail grid extension factor");
  tails_b.uinteger("--samples", "samples", "Monte Carlo sample count");
  tails_b.uinteger("--seed", "seed", "Monte Carlo stream seed");
  std::string tails_out;
  tails->add_option("--out", tails_out, "write the CSV here instead of stdout");

  // report
  CLI::App* report = app.add_subcommand("report", "summarize report artifacts");
  std::vector<std::string> report_files;
  report->add_option("files", report_files, "report/sweep/tails artifacts")->required();
  std::string report_out, report_plots;
  report->add_option("--out", report_out, "write the summary here instead of stdout");
  report->add_option("--plots", report_plots, "prefix for t/bound and t/empirical columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (check->parsed()) {
    ordered_json spec;
    spec["id"] = check_id;
    check_b.apply(spec);
    if (spec.contains("no_center")) {
      spec["center"] = !spec["no_center"].get<bool>();
      spec.erase("no_center");
    }
    return run_spec(&ht_run_check, spec, check_out);
  }
  if (sweep->parsed()) {
    ordered_json spec;
    spec["id"] = sweep_ids;
    if (!sweep_n.empty()) spec["n"] = sweep_n;
    if (!sweep_beta.empty()) spec["beta"] = sweep_beta;
    if (!sweep_g.empty()) spec["g"] = sweep_g;
    sweep_b.apply(spec);
    return run_spec(&ht_run_sweep, spec, sweep_out);
  }
  if (tails->parsed()) {
    ordered_json spec;
    spec["id"] = "cor44";
    tails_b.apply(spec);
    return run_spec(&ht_run_tails, spec, tails_out);
  }
  return run_report(report_files, report_out, report_plots);
}
