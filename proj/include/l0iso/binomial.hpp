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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace l0iso::binom {

// X ~ Binomial(n, q). Hamming-ball code uses q = 1 - p.
struct BinomialSpec {
  unsigned n = 1;
  double q = 0.5;

  // Throws kInvalidArgument for n == 0 or q outside [0, 1].
  void validate() const;
};

// Natural log of P[X = k]; -inf for impossible outcomes.
long double log_pmf(const BinomialSpec& spec, unsigned k);

// Throws kDomain when k > n.
double binom_pmf(const BinomialSpec& spec, long k);

// P[X <= k] for k in [-1, n]; arguments outside clamp to 0 or 1.
double binom_cdf(const BinomialSpec& spec, long k);

// P[X > k].
double binom_sf(const BinomialSpec& spec, long k);

// Whole-support tables, one entry per k in [0, n].
std::vector<double> pmf_table(const BinomialSpec& spec);
std::vector<double> cdf_table(const BinomialSpec& spec);

// Points with at least n - r coordinates in [0, p].
struct HammingBallSpec {
  double p = 0.5;
  unsigned r = 0;
  unsigned n = 1;

  void validate() const;
};

// P[Binomial(n, 1-p) <= r].
double hamming_ball_volume(const HammingBallSpec& ball);

// vol H(p, r+1) - vol H(p, r), i.e. P[Binomial(n, 1-p) = r + 1].
double hamming_shell_volume(const HammingBallSpec& ball);

// The p in (0, 1) with hamming_ball_volume({p, r, n}) == volume, by bisection.
// Requires r < n and 0 < volume < 1.
double solve_ball_threshold(unsigned n, unsigned r, double volume);

// Smallest boundary volume over Hamming balls of the given volume, minimizing
// over radii r in [0, n-1]. Lower bound for anchored sets of that volume.
double harper_boundary_bound(unsigned n, double volume);

struct Step3Ratio {
  double value = 0.0;  // +inf when not finite
  bool finite = false;
};

// P[X = k] / min(P[X < k], P[X > k]) with X ~ Binomial(n, 1-p).
Step3Ratio step3_ratio(unsigned n, double p, unsigned k);

// 32 log-spaced points on [1/(8n), 1/2] followed by 1/(4n).
std::vector<double> scan_p_grid(unsigned n, unsigned log_points = 32);

struct ScanRow {
  unsigned n = 0;
  double p = 0.0;
  unsigned k = 0;
  double ratio = 0.0;
  double scaled = 0.0;  // ratio * sqrt(n p (1-p))
};

struct ScanSummary {
  double c_hat = 0.0;
  ScanRow argmin;
  std::uint64_t rows = 0;
  // per_n_min[n] for n in [2, n_max]; entries 0 and 1 unused (NaN).
  std::vector<double> per_n_min;
};

// Scans n in [2, n_max], the p-grid of each n and every k with a finite
// ratio. Rows reach `sink` in (n, p-grid order, k) order regardless of thread
// count. Work is split across n; `threads` = 0 picks the hardware count.
ScanSummary binom_bound_scan(unsigned n_max, unsigned log_points = 32,
                             const std::function<void(const ScanRow&)>& sink = {},
                             unsigned threads = 0);

// Explicit p-grid variant.
ScanSummary binom_bound_scan(unsigned n_max, const std::vector<double>& p_grid,
                             const std::function<void(const ScanRow&)>& sink = {});

struct GrowthThresholds {
  unsigned k1 = 0;
  unsigned k2 = 0;
};

// With s = 1 + x and G(k) = P[Binomial(n, 1-p) = k]:
//   k1 = max{k in [1, n]   : G(k)/G(k-1) >= s}, 0 if empty
//   k2 = min{k in [0, n-1] : G(k+1)/G(k) <= 1/s}, n if empty
// Closed form in k; requires x > 0 and 0 < p <= 1/2.
GrowthThresholds growth_thresholds(unsigned n, double p, double x);

// Same thresholds by sweeping pmf ratios.
GrowthThresholds growth_thresholds_by_ratios(unsigned n, double p, double x);

// |C(n, floor(n/2)) sqrt(n) / 2^n - sqrt(2/pi)|.
double stirling_check(unsigned n);

// 0.4215 (p^2 + (1-p)^2) / sqrt(n p (1-p)); +inf when the variance vanishes.
double berry_esseen_bound(unsigned n, double p);

double normal_cdf(double x);

}  // namespace l0iso::binom
