#include "mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace heavytail {

namespace {

constexpr std::uint64_t kBlock = 65536;

struct KahanSum {
  double s = 0, c = 0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

}  // namespace

void mc_blocks(std::uint64_t samples, int accum_count,
               const std::function<void(std::uint64_t, std::uint64_t, double*)>& block_fn,
               double* out) {
  if (samples == 0) throw param_error("mc_blocks: samples must be positive");
  const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks * accum_count, 0.0);

  int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(nblocks)));
  std::atomic<std::uint64_t> next{0};
  auto run = [&]() {
    for (;;) {
      std::uint64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      std::uint64_t i0 = b * kBlock;
      std::uint64_t i1 = std::min(samples, i0 + kBlock);
      block_fn(i0, i1, partial.data() + b * accum_count);
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  for (int k = 0; k < accum_count; ++k) {
    KahanSum acc;
    for (std::uint64_t b = 0; b < nblocks; ++b) acc.add(partial[b * accum_count + k]);
    out[k] = acc.s;
  }
}

McEstimate mc_expect(const Measure& mu, const std::function<double(const double*)>& f,
                     std::uint64_t samples, std::uint64_t seed) {
  const int n = mu.dim();
  double sums[2];
  mc_blocks(samples, 2,
            [&](std::uint64_t i0, std::uint64_t i1, double* acc) {
              KahanSum s1, s2;
              double x[16];
              for (std::uint64_t i = i0; i < i1; ++i) {
                mu.sample(seed, i, x);
                double v = f(x);
                s1.add(v);
                s2.add(v * v);
              }
              (void)n;
              acc[0] = s1.s;
              acc[1] = s2.s;
            },
            sums);
  double N = static_cast<double>(samples);
  double mean = sums[0] / N;
  double var = std::max(0.0, (sums[1] - N * mean * mean) / std::max(1.0, N - 1));
  return {mean, std::sqrt(var / N), samples};
}

void mc_expect_pair(const Measure& mu, const std::function<double(const double*)>& f1,
                    const std::function<double(const double*)>& f2,
                    std::uint64_t samples, std::uint64_t seed,
                    McEstimate& out1, McEstimate& out2) {
  double sums[4];
  mc_blocks(samples, 4,
            [&](std::uint64_t i0, std::uint64_t i1, double* acc) {
              KahanSum a1, a2, b1, b2;
              double x[16];
              for (std::uint64_t i = i0; i < i1; ++i) {
                mu.sample(seed, i, x);
                double v = f1(x), w = f2(x);
                a1.add(v);
                a2.add(v * v);
                b1.add(w);
                b2.add(w * w);
              }
              acc[0] = a1.s;
              acc[1] = a2.s;
              acc[2] = b1.s;
              acc[3] = b2.s;
            },
            sums);
  double N = static_cast<double>(samples);
  double m1 = sums[0] / N, m2 = sums[2] / N;
  double v1 = std::max(0.0, (sums[1] - N * m1 * m1) / std::max(1.0, N - 1));
  double v2 = std::max(0.0, (sums[3] - N * m2 * m2) / std::max(1.0, N - 1));
  out1 = {m1, std::sqrt(v1 / N), samples};
  out2 = {m2, std::sqrt(v2 / N), samples};
}

std::vector<double> mc_values(const Measure& mu,
                              const std::function<double(const double*)>& f,
                              std::uint64_t samples, std::uint64_t seed) {
  std::vector<double> vals(samples);
  double dummy[1];
  mc_blocks(samples, 1,
            [&](std::uint64_t i0, std::uint64_t i1, double* acc) {
              double x[16];
              for (std::uint64_t i = i0; i < i1; ++i) {
                mu.sample(seed, i, x);
                vals[i] = f(x);
              }
              acc[0] = 0;
            },
            dummy);
  return vals;
}

double empirical_median(const Measure& mu, const std::function<double(const double*)>& f,
                        std::uint64_t samples, std::uint64_t seed) {
  std::vector<double> vals = mc_values(mu, f, samples, seed);
  std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  double hi = vals[mid];
  if (vals.size() % 2 == 1) return hi;
  std::nth_element(vals.begin(), vals.begin() + mid - 1, vals.begin() + mid);
  return 0.5 * (vals[mid - 1] + hi);
}

std::vector<double> mc_tail_probs(const Measure& mu,
                                  const std::function<double(const double*)>& f,
                                  const std::vector<double>& tgrid,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::vector<double>* ses) {
  const int k = static_cast<int>(tgrid.size());
  if (k == 0) return {};
  std::vector<double> counts(k, 0.0);
  mc_blocks(samples, k,
            [&](std::uint64_t i0, std::uint64_t i1, double* acc) {
              double x[16];
              for (std::uint64_t i = i0; i < i1; ++i) {
                mu.sample(seed, i, x);
                double v = f(x);
                for (int j = 0; j < k; ++j)
                  if (v >= tgrid[j]) acc[j] += 1.0;
              }
            },
            counts.data());
  double N = static_cast<double>(samples);
  std::vector<double> probs(k);
  if (ses) ses->assign(k, 0.0);
  for (int j = 0; j < k; ++j) {
    double p = counts[j] / N;
    probs[j] = p;
    if (ses) (*ses)[j] = std::sqrt(std::max(p * (1 - p), 1.0 / N) / N);
  }
  return probs;
}

}  // namespace heavytail
