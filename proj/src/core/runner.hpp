#pragma once

#include "concentration.hpp"
#include "isoperimetry.hpp"

namespace heavytail {

struct RunResult {
  int exit_code = 0;   // 0 holds/done, 1 error, 2 violated, 3 inconclusive
  std::string output;  // JSON object or CSV payload
  std::string error;   // message when exit_code == 1
  // 0 none, 1 parameter, 2 precondition, 3 numeric, 4 parse, 5 other
  int error_category = 0;
};

// One checker invocation described by a flat JSON object:
//   {"id":"thm31","n":1,"beta":2,"g":"inv1px2","method":"quad",
//    "samples":1000000,"seed":42,"tol":1e-6,"format":"json", ...extras}
// id "cor44" switches to the tail experiment and emits the per-t CSV.
RunResult run_check_json(const std::string& cfg_json);

// Cartesian sweep over lists for id/n/beta/g; beta entries may be numbers or
// the symbols "n", "n+<k>", "<k>n".  One CSV row per cell, lexicographic by
// (id, n, beta, g); per-cell failures are captured in the row and the sweep
// continues.  Exit 0 unless the sweep itself cannot run.
RunResult run_sweep_csv(const std::string& cfg_json);

// Tail experiment (three-regime envelope) as a t,bound,empirical,stderr,verdict
// CSV; same spec keys as run_check_json.
RunResult run_tails_csv(const std::string& cfg_json);

std::string tails_csv(const TailReport& tr);

}  // namespace heavytail
