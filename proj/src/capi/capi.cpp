#include "heavytail/heavytail.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/runner.hpp"

struct ht_measure {
  heavytail::Measure m;
};

namespace {

thread_local std::string g_last_error;

ht_status fail(ht_status st, const char* what) {
  g_last_error = what ? what : "";
  return st;
}

template <typename F>
ht_status wrap(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const heavytail::param_error& e) {
    return fail(HT_ERR_PARAM, e.what());
  } catch (const heavytail::precondition_error& e) {
    return fail(HT_ERR_PRECONDITION, e.what());
  } catch (const heavytail::numeric_error& e) {
    return fail(HT_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(HT_ERR_UNKNOWN, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ht_status deliver(const heavytail::RunResult& rr, char** out, int* exit_code) {
  if (rr.exit_code == 1) {
    g_last_error = rr.error;
    switch (rr.error_category) {
      case 1: return HT_ERR_PARAM;
      case 2: return HT_ERR_PRECONDITION;
      case 3: return HT_ERR_NUMERIC;
      case 4: return HT_ERR_PARSE;
      default: return HT_ERR_UNKNOWN;
    }
  }
  char* text = dup_string(rr.output);
  if (text == nullptr) return fail(HT_ERR_UNKNOWN, "out of memory");
  *out = text;
  if (exit_code != nullptr) *exit_code = rr.exit_code;
  return HT_OK;
}

}  // namespace

extern "C" {

const char* ht_version(void) { return "0.1.0"; }

const char* ht_last_error(void) { return g_last_error.c_str(); }

ht_status ht_cauchy_create(int n, double beta, ht_measure** out) {
  return wrap([&]() {
    if (out == nullptr) throw heavytail::param_error("ht_cauchy_create: out is null");
    *out = new ht_measure{heavytail::Measure::cauchy(n, beta)};
    return HT_OK;
  });
}

ht_status ht_cauchy_rescaled_create(int n, double beta, ht_measure** out) {
  return wrap([&]() {
    if (out == nullptr) throw heavytail::param_error("ht_cauchy_rescaled_create: out is null");
    *out = new ht_measure{heavytail::Measure::cauchy_rescaled(n, beta)};
    return HT_OK;
  });
}

void ht_measure_free(ht_measure* m) { delete m; }

int ht_measure_dim(const ht_measure* m) { return m == nullptr ? 0 : m->m.dim(); }

ht_status ht_measure_log_density(const ht_measure* m, const double* x, double* out) {
  return wrap([&]() {
    if (m == nullptr || x == nullptr || out == nullptr)
      throw heavytail::param_error("ht_measure_log_density: null argument");
    *out = m->m.log_density(x);
    return HT_OK;
  });
}

ht_status ht_measure_log_normalizer(const ht_measure* m, double* out) {
  return wrap([&]() {
    if (m == nullptr || out == nullptr)
      throw heavytail::param_error("ht_measure_log_normalizer: null argument");
    *out = m->m.log_normalizer();
    return HT_OK;
  });
}

ht_status ht_cauchy_moment(const ht_measure* m, int order, double* out) {
  return wrap([&]() {
    if (m == nullptr || out == nullptr)
      throw heavytail::param_error("ht_cauchy_moment: null argument");
    if (m->m.kind() != heavytail::Measure::Kind::cauchy)
      throw heavytail::param_error(
          "ht_cauchy_moment: closed form applies to the plain family only");
    heavytail::CauchyParams p(m->m.dim(), m->m.beta());
    *out = heavytail::cauchy_moment_product(p, order);
    return HT_OK;
  });
}

ht_status ht_measure_sample(const ht_measure* m, uint64_t seed, uint64_t index, double* out) {
  return wrap([&]() {
    if (m == nullptr || out == nullptr)
      throw heavytail::param_error("ht_measure_sample: null argument");
    m->m.sample(seed, index, out);
    return HT_OK;
  });
}

ht_status ht_measure_radial_quantile(const ht_measure* m, double level, double* out) {
  return wrap([&]() {
    if (m == nullptr || out == nullptr)
      throw heavytail::param_error("ht_measure_radial_quantile: null argument");
    *out = m->m.radial_quantile(level);
    return HT_OK;
  });
}

ht_status ht_measure_geometric_mean_radius(const ht_measure* m, double* out) {
  return wrap([&]() {
    if (m == nullptr || out == nullptr)
      throw heavytail::param_error("ht_measure_geometric_mean_radius: null argument");
    *out = m->m.geometric_mean_radius();
    return HT_OK;
  });
}

ht_status ht_run_check(const char* cfg_json, char** out, int* exit_code) {
  return wrap([&]() {
    if (cfg_json == nullptr || out == nullptr)
      throw heavytail::param_error("ht_run_check: null argument");
    return deliver(heavytail::run_check_json(cfg_json), out, exit_code);
  });
}

ht_status ht_run_sweep(const char* cfg_json, char** out, int* exit_code) {
  return wrap([&]() {
    if (cfg_json == nullptr || out == nullptr)
      throw heavytail::param_error("ht_run_sweep: null argument");
    return deliver(heavytail::run_sweep_csv(cfg_json), out, exit_code);
  });
}

ht_status ht_run_tails(const char* cfg_json, char** out, int* exit_code) {
  return wrap([&]() {
    if (cfg_json == nullptr || out == nullptr)
      throw heavytail::param_error("ht_run_tails: null argument");
    return deliver(heavytail::run_tails_csv(cfg_json), out, exit_code);
  });
}

void ht_string_free(char* s) { std::free(s); }

}  // extern "C"
