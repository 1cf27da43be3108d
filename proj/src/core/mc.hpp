#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "measures.hpp"

namespace heavytail {

struct McEstimate {
  double mean = 0;
  double se = 0;  // standard error of the mean
  std::uint64_t n = 0;
};

// Deterministic parallel block reduction: samples are split into fixed blocks,
// each block accumulates with compensated summation, and block results merge
// in index order.  Output is byte-identical for any worker count.
void mc_blocks(std::uint64_t samples, int accum_count,
               const std::function<void(std::uint64_t i0, std::uint64_t i1, double* acc)>& block_fn,
               double* out);

McEstimate mc_expect(const Measure& mu, const std::function<double(const double*)>& f,
                     std::uint64_t samples, std::uint64_t seed);

// joint estimation of two functionals on the same sample stream
void mc_expect_pair(const Measure& mu, const std::function<double(const double*)>& f1,
                    const std::function<double(const double*)>& f2,
                    std::uint64_t samples, std::uint64_t seed,
                    McEstimate& out1, McEstimate& out2);

// per-index evaluations (parallel fill, order-independent layout)
std::vector<double> mc_values(const Measure& mu,
                              const std::function<double(const double*)>& f,
                              std::uint64_t samples, std::uint64_t seed);

double empirical_median(const Measure& mu, const std::function<double(const double*)>& f,
                        std::uint64_t samples, std::uint64_t seed);

// P(f >= t) for each t in tgrid; ses get the binomial standard errors
std::vector<double> mc_tail_probs(const Measure& mu,
                                  const std::function<double(const double*)>& f,
                                  const std::vector<double>& tgrid,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::vector<double>* ses);

}  // namespace heavytail
