// Copyright 2026 The l0iso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the l0iso library. All functions return an l0_status; on
 * failure l0_last_error() describes the problem for the calling thread.
 * Handles are opaque and released with the matching *_free function. Strings
 * returned through char** are released with l0_free_string. Bit strings put
 * coordinate 1 leftmost. */
#ifndef L0ISO_L0ISO_H_
#define L0ISO_L0ISO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define L0_API __declspec(dllexport)
#else
#define L0_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l0_status {
  L0_OK = 0,
  L0_INVALID_ARGUMENT = 1,
  L0_DIMENSION = 2,
  L0_DOMAIN = 3,
  L0_CAPACITY = 4,
  L0_DEGENERATE = 5,
  L0_PARSE = 6,
  L0_STATE = 7,
  L0_BALANCE = 8,
  L0_FAILED = 9,
  L0_INTERNAL = 10
} l0_status;

/* Longest bit string plus terminator. */
#define L0_BITS_CAPACITY 25

L0_API const char* l0_version(void);
L0_API const char* l0_last_error(void);
L0_API const char* l0_status_name(l0_status status);
L0_API void l0_free_string(char* s);

/* ---- hypercube ---------------------------------------------------------- */

typedef struct l0_vertex_set l0_vertex_set;
typedef struct l0_grid_set l0_grid_set;

L0_API l0_status l0_l0_norm(const char* bits, unsigned* out);
L0_API l0_status l0_hamming_distance(const char* s, const char* t, unsigned* out);

L0_API l0_status l0_vertex_set_create(unsigned n, l0_vertex_set** out);
L0_API l0_status l0_vertex_set_from_json(const char* json, l0_vertex_set** out);
L0_API l0_status l0_vertex_set_to_json(const l0_vertex_set* set, char** out);
L0_API void l0_vertex_set_free(l0_vertex_set* set);
L0_API l0_status l0_vertex_set_insert(l0_vertex_set* set, const char* bits);
L0_API l0_status l0_vertex_set_contains(const l0_vertex_set* set, const char* bits, int* out);
L0_API l0_status l0_vertex_set_size(const l0_vertex_set* set, uint64_t* out);
L0_API l0_status l0_vertex_boundary(const l0_vertex_set* set, l0_vertex_set** out);
L0_API l0_status l0_vertex_sets_axis_disjoint(const l0_vertex_set* a, const l0_vertex_set* b,
                                              int* out);
L0_API l0_status l0_halving_construction(unsigned n, l0_vertex_set** s1, l0_vertex_set** s2,
                                         l0_vertex_set** s3);

typedef struct l0_halving_counts {
  uint64_t s1, s2, s3;
  uint64_t ratio_num, ratio_den; /* |S3| / min(|S1|, |S2|) reduced */
} l0_halving_counts;

L0_API l0_status l0_halving_counts_compute(unsigned n, l0_halving_counts* out);

typedef struct l0_psi_result {
  int infinite; /* no feasible S1 */
  uint64_t num, den;
  uint64_t boundary, residual, subsets_visited;
} l0_psi_result;

/* witness may be NULL. threads = 0 uses every hardware thread. */
L0_API l0_status l0_psi_grid_exact(unsigned n, unsigned k, unsigned threads, l0_psi_result* out,
                                   l0_grid_set** witness);
L0_API l0_status l0_cell_image(const l0_vertex_set* set, l0_grid_set** out);

/* ---- grid sets ---------------------------------------------------------- */

typedef enum l0_direction { L0_PLUS = 0, L0_MINUS = 1 } l0_direction;

L0_API l0_status l0_grid_set_create(unsigned n, unsigned k, l0_grid_set** out);
L0_API l0_status l0_grid_set_from_json(const char* json, l0_grid_set** out);
L0_API l0_status l0_grid_set_to_json(const l0_grid_set* set, char** out);
L0_API l0_status l0_grid_set_clone(const l0_grid_set* set, l0_grid_set** out);
L0_API void l0_grid_set_free(l0_grid_set* set);
L0_API l0_status l0_grid_set_spec(const l0_grid_set* set, unsigned* n, unsigned* k);
L0_API l0_status l0_grid_set_insert(l0_grid_set* set, const unsigned* index);
L0_API l0_status l0_grid_set_cardinality(const l0_grid_set* set, uint64_t* out);
L0_API l0_status l0_grid_set_equal(const l0_grid_set* a, const l0_grid_set* b, int* out);
L0_API l0_status l0_grid_volume(const l0_grid_set* set, uint64_t* num, uint64_t* den);
L0_API l0_status l0_grid_is_anchored(const l0_grid_set* set, int* out);
L0_API l0_status l0_grid_boundary(const l0_grid_set* set, l0_grid_set** out);
L0_API l0_status l0_grid_axis_disjoint(const l0_grid_set* a, const l0_grid_set* b, int* out);
/* axis is 0-based. */
L0_API l0_status l0_grid_shake(const l0_grid_set* set, unsigned axis, l0_direction dir,
                               l0_grid_set** out);
L0_API l0_status l0_grid_full_shake(const l0_grid_set* set, l0_direction dir, l0_grid_set** out);
L0_API l0_status l0_grid_refine(const l0_grid_set* set, unsigned factor, l0_grid_set** out);
L0_API l0_status l0_grid_hamming_ball(unsigned n, unsigned k, unsigned threshold, unsigned radius,
                                      l0_grid_set** out);
/* infinite = 1 when S1 or its residual is empty. */
L0_API l0_status l0_grid_ratio(const l0_grid_set* s1, uint64_t* num, uint64_t* den, int* infinite);

/* ---- binomial ----------------------------------------------------------- */

L0_API l0_status l0_binom_pmf(unsigned n, double q, long k, double* out);
L0_API l0_status l0_binom_cdf(unsigned n, double q, long k, double* out);
L0_API l0_status l0_hamming_ball_volume(double p, unsigned r, unsigned n, double* out);
L0_API l0_status l0_step3_ratio(unsigned n, double p, unsigned k, double* ratio, int* finite);

typedef struct l0_scan_row {
  unsigned n;
  double p;
  unsigned k;
  double ratio;
  double scaled;
} l0_scan_row;

typedef struct l0_scan_summary {
  double c_hat;
  l0_scan_row argmin;
  uint64_t rows;
} l0_scan_summary;

typedef void (*l0_scan_row_fn)(const l0_scan_row* row, void* user);

/* Rows arrive in (n, p-grid, k) order. per_n_min, when non-NULL, receives
 * n_max + 1 entries (indices 0 and 1 are NaN). */
L0_API l0_status l0_binom_bound_scan(unsigned n_max, unsigned log_points, unsigned threads,
                                     l0_scan_row_fn sink, void* user, l0_scan_summary* summary,
                                     double* per_n_min);
L0_API l0_status l0_scan_p_grid(unsigned n, unsigned log_points, double* out, size_t capacity,
                                size_t* count);
/* by_ratios = 1 sweeps pmf ratios instead of using the closed form. */
L0_API l0_status l0_growth_thresholds(unsigned n, double p, double x, int by_ratios, unsigned* k1,
                                      unsigned* k2);
L0_API l0_status l0_stirling_check(unsigned n, double* out);
L0_API l0_status l0_berry_esseen_bound(unsigned n, double p, double* out);

/* ---- splitting ---------------------------------------------------------- */

typedef struct l0_weight l0_weight;
typedef struct l0_point_cloud l0_point_cloud;
typedef struct l0_body l0_body;

L0_API l0_status l0_weight_from_json(const char* json, l0_weight** out);
L0_API l0_status l0_weight_to_json(const l0_weight* w, char** out);
L0_API l0_status l0_weight_uniform(unsigned n, l0_weight** out);
L0_API l0_status l0_weight_random(unsigned n, unsigned pairs, int antipodal, uint64_t seed,
                                  l0_weight** out);
L0_API void l0_weight_free(l0_weight* w);
L0_API l0_status l0_weight_info(const l0_weight* w, unsigned* n, uint64_t* support,
                                double* balance_error);

typedef struct l0_split_certificate {
  char z[L0_BITS_CAPACITY];
  double a, b, c, ratio; /* ratio = +inf when min(a, b) = 0 */
} l0_split_certificate;

L0_API l0_status l0_split(const l0_weight* w, const char* z, l0_split_certificate* out);
/* nums/dens hold E[A], E[B], E[C] as reduced fractions (n <= 62). */
L0_API l0_status l0_expected_band_masses(unsigned n, uint64_t nums[3], uint64_t dens[3]);
L0_API l0_status l0_joint_indicator_prob(unsigned n, unsigned k, double* out);
L0_API l0_status l0_fluctuation_gap(unsigned n, double* out);
L0_API l0_status l0_small_weight_sum(const l0_weight* w, const char* s, double* out);
L0_API l0_status l0_small_weight_max(const l0_weight* w, double* value,
                                     char center[L0_BITS_CAPACITY]);
L0_API l0_status l0_variance_exact(const l0_weight* w, double* out);
L0_API l0_status l0_open_problem_explore(const l0_weight* w, double* lhs, double* rhs);

typedef struct l0_certify_options {
  uint64_t trials;
  uint64_t seed;
  unsigned n0;
  unsigned threads;
} l0_certify_options;

typedef struct l0_certify_result {
  int adhoc_used;
  double a, b, c, ratio;
  /* random search */
  int has_random;
  char z[L0_BITS_CAPACITY];
  double random_ratio;
  uint64_t trials, degenerate_trials, best_trial;
  /* ad-hoc branch (n < n0) */
  int has_adhoc;
  unsigned adhoc_case;
  char s[L0_BITS_CAPACITY];
  char t[L0_BITS_CAPACITY];
  double adhoc_ratio;
} l0_certify_result;

L0_API l0_status l0_certify_psi_upper_bound(const l0_weight* w, const l0_certify_options* options,
                                            l0_certify_result* out);

L0_API l0_status l0_point_cloud_from_csv(const char* text, l0_point_cloud** out);
L0_API void l0_point_cloud_free(l0_point_cloud* cloud);
L0_API l0_status l0_point_cloud_info(const l0_point_cloud* cloud, unsigned* n, uint64_t* points);
/* Monte Carlo cloud of a body with a bounding box: `draws` uniform proposals. */
L0_API l0_status l0_body_sample(const l0_body* body, uint64_t draws, uint64_t seed,
                                l0_point_cloud** out);
/* out receives n coordinates. */
L0_API l0_status l0_median_point(const l0_point_cloud* cloud, double* out);
L0_API l0_status l0_orthant_weights(const l0_point_cloud* cloud, const double* p, double tolerance,
                                    l0_weight** out, double* raw_error, int* remediated);

/* ---- sampler ------------------------------------------------------------ */

typedef int (*l0_membership_fn)(const double* x, unsigned n, void* user);

L0_API l0_status l0_body_box(unsigned n, const double* lo, const double* hi, l0_body** out);
L0_API l0_status l0_body_from_json(const char* json, l0_body** out);
/* The callback and user pointer must outlive the body. */
L0_API l0_status l0_body_oracle(unsigned n, l0_membership_fn contains, void* user,
                                const double* lo, const double* hi, const double* start,
                                l0_body** out);
L0_API void l0_body_free(l0_body* body);
/* kind: 0 box, 1 polytope, 2 oracle. */
L0_API l0_status l0_body_info(const l0_body* body, unsigned* n, int* kind, int* has_bounds);
L0_API l0_status l0_body_contains(const l0_body* body, const double* x, int* out);
L0_API l0_status l0_chord(const l0_body* body, const double* x, unsigned axis, double* lo,
                          double* hi);

typedef enum l0_chain_kind { L0_CHAR = 0, L0_HIT_AND_RUN = 1 } l0_chain_kind;

typedef struct l0_diag_options {
  l0_chain_kind chain;
  uint64_t steps;
  uint64_t burn_in;
  uint64_t seed;
  uint64_t reference_steps; /* 0: same as the main chain */
  double alpha;             /* 0: 0.01 */
} l0_diag_options;

typedef struct l0_coord_diag {
  double ks_statistic, tau_int, effective_n, p_value, mean;
} l0_coord_diag;

typedef struct l0_diag_summary {
  uint64_t samples, degenerate_steps, membership_violations;
  int reference_chain;
  int stationary;
} l0_diag_summary;

typedef void (*l0_trajectory_fn)(uint64_t step, const double* x, unsigned n, void* user);

/* start may be NULL (body interior point). coords receives n entries;
 * axis_counts, when non-NULL, n entries. */
L0_API l0_status l0_run_diagnostics(const l0_body* body, const l0_diag_options* options,
                                    const double* start, l0_trajectory_fn trajectory, void* user,
                                    l0_diag_summary* summary, l0_coord_diag* coords,
                                    uint64_t* axis_counts);

typedef struct l0_detailed_balance {
  unsigned cells_per_axis;
  uint64_t steps;
  double statistic;
  uint64_t pairs;
  double z;
  int passed;
} l0_detailed_balance;

L0_API l0_status l0_transition_symmetry_test(unsigned m, uint64_t steps, uint64_t seed,
                                             l0_detailed_balance* out);

#ifdef __cplusplus
}
#endif

#endif /* L0ISO_L0ISO_H_ */
