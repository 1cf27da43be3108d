/* C interface to the heavytail inequality-verification library.
 *
 * All functions returning ht_status set a thread-local error message
 * retrievable through ht_last_error() on failure.  Strings handed out through
 * char** parameters are heap-allocated and must be released with
 * ht_string_free().
 */
#ifndef HEAVYTAIL_H
#define HEAVYTAIL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ht_status {
  HT_OK = 0,
  HT_ERR_PARAM = 1,        /* invalid argument or configuration value */
  HT_ERR_PRECONDITION = 2, /* checker hypothesis not met by the inputs */
  HT_ERR_NUMERIC = 3,      /* quadrature/minimization breakdown */
  HT_ERR_PARSE = 4,        /* malformed JSON configuration */
  HT_ERR_UNKNOWN = 5
} ht_status;

/* Opaque probability measure handle. */
typedef struct ht_measure ht_measure;

const char* ht_version(void);

/* Thread-local message for the most recent failure ("" when none). */
const char* ht_last_error(void);

/* Measure with density proportional to (1+|x|^2)^{-beta} on R^n (beta > n/2),
 * and its pushforward under x -> sqrt(2 beta - n) x. */
ht_status ht_cauchy_create(int n, double beta, ht_measure** out);
ht_status ht_cauchy_rescaled_create(int n, double beta, ht_measure** out);
void ht_measure_free(ht_measure* m);

/* Dimension n of the sample space (0 for a null handle). */
int ht_measure_dim(const ht_measure* m);

/* log of the normalized density at x (length-n array). */
ht_status ht_measure_log_density(const ht_measure* m, const double* x, double* out);

/* log of the normalizing constant of the unnormalized shape. */
ht_status ht_measure_log_normalizer(const ht_measure* m, double* out);

/* Closed-form moment E (1+|x|^2)^{-order}, order >= 0 (plain family only). */
ht_status ht_cauchy_moment(const ht_measure* m, int order, double* out);

/* Draw number `index` of the reproducible stream opened by `seed`;
 * out must hold n doubles.  Identical (seed, index) pairs give identical
 * points regardless of call order or thread. */
ht_status ht_measure_sample(const ht_measure* m, uint64_t seed, uint64_t index, double* out);

/* Radius r with P(|x| <= r) = level, 0 < level < 1. */
ht_status ht_measure_radial_quantile(const ht_measure* m, double level, double* out);

/* exp E log |x|, the geometric mean of the Euclidean norm. */
ht_status ht_measure_geometric_mean_radius(const ht_measure* m, double* out);

/* Runners.  cfg_json is a flat JSON object, e.g.
 *   {"id":"thm31","n":1,"beta":2,"g":"inv1px2","method":"quad","seed":42}
 * On success *out receives the report (JSON object or CSV text) and
 * *exit_code the verdict status: 0 holds/done, 2 violated, 3 inconclusive.
 * Configuration or numeric failures return the matching ht_status and leave
 * *out untouched. */
ht_status ht_run_check(const char* cfg_json, char** out, int* exit_code);
ht_status ht_run_sweep(const char* cfg_json, char** out, int* exit_code);
ht_status ht_run_tails(const char* cfg_json, char** out, int* exit_code);

void ht_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HEAVYTAIL_H */
