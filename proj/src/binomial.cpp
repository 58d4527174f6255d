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

#include "l0iso/binomial.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "l0iso/error.hpp"

namespace l0iso::binom {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

long double log_gamma(long double x) {
  int sign = 0;
  return lgammal_r(x, &sign);
}

long double log_choose(unsigned n, unsigned k) {
  return log_gamma(n + 1.0L) - log_gamma(k + 1.0L) - log_gamma(n - k + 1.0L);
}

long double log_add(long double a, long double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const long double hi = std::max(a, b);
  const long double lo = std::min(a, b);
  return hi + log1pl(expl(lo - hi));
}

void check_open_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCode::kDomain, "threshold p must lie in (0, 1)");
  }
}

std::vector<long double> log_pmf_table(const BinomialSpec& spec) {
  std::vector<long double> out(spec.n + 1);
  for (unsigned k = 0; k <= spec.n; ++k) out[k] = log_pmf(spec, k);
  return out;
}

}  // namespace

void BinomialSpec::validate() const {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "binomial needs n >= 1");
  if (!(q >= 0.0 && q <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "binomial success probability outside [0, 1]");
  }
}

long double log_pmf(const BinomialSpec& spec, unsigned k) {
  spec.validate();
  if (k > spec.n) return kNegInf;
  if (spec.q == 0.0) return k == 0 ? 0.0L : kNegInf;
  if (spec.q == 1.0) return k == spec.n ? 0.0L : kNegInf;
  const long double q = spec.q;
  return log_choose(spec.n, k) + k * logl(q) + (spec.n - k) * log1pl(-q);
}

double binom_pmf(const BinomialSpec& spec, long k) {
  spec.validate();
  if (k < 0 || k > static_cast<long>(spec.n)) {
    fail(ErrorCode::kDomain, "pmf argument " + std::to_string(k) + " outside [0, " +
                                 std::to_string(spec.n) + "]");
  }
  return static_cast<double>(expl(log_pmf(spec, static_cast<unsigned>(k))));
}

double binom_cdf(const BinomialSpec& spec, long k) {
  spec.validate();
  if (k < 0) return 0.0;
  if (k >= static_cast<long>(spec.n)) return 1.0;
  long double sum = 0.0L;
  for (long j = 0; j <= k; ++j) sum += expl(log_pmf(spec, static_cast<unsigned>(j)));
  return static_cast<double>(std::min(sum, 1.0L));
}

double binom_sf(const BinomialSpec& spec, long k) {
  spec.validate();
  if (k < 0) return 1.0;
  if (k >= static_cast<long>(spec.n)) return 0.0;
  long double sum = 0.0L;
  for (long j = static_cast<long>(spec.n); j > k; --j) {
    sum += expl(log_pmf(spec, static_cast<unsigned>(j)));
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

std::vector<double> pmf_table(const BinomialSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.n + 1);
  for (unsigned k = 0; k <= spec.n; ++k) out[k] = static_cast<double>(expl(log_pmf(spec, k)));
  return out;
}

std::vector<double> cdf_table(const BinomialSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.n + 1);
  long double sum = 0.0L;
  for (unsigned k = 0; k <= spec.n; ++k) {
    sum += expl(log_pmf(spec, k));
    out[k] = static_cast<double>(std::min(sum, 1.0L));
  }
  out[spec.n] = 1.0;
  return out;
}

void HammingBallSpec::validate() const {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "Hamming ball needs n >= 1");
  check_open_p(p);
  if (r > n) fail(ErrorCode::kDomain, "Hamming ball radius exceeds n");
}

double hamming_ball_volume(const HammingBallSpec& ball) {
  ball.validate();
  return binom_cdf(BinomialSpec{ball.n, 1.0 - ball.p}, ball.r);
}

double hamming_shell_volume(const HammingBallSpec& ball) {
  ball.validate();
  if (ball.r >= ball.n) return 0.0;
  return binom_pmf(BinomialSpec{ball.n, 1.0 - ball.p}, ball.r + 1);
}

double solve_ball_threshold(unsigned n, unsigned r, double volume) {
  if (r >= n) fail(ErrorCode::kDomain, "radius must be below n");
  if (!(volume > 0.0 && volume < 1.0)) fail(ErrorCode::kDomain, "volume must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hamming_ball_volume({mid, r, n}) < volume) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double harper_boundary_bound(unsigned n, double volume) {
  if (volume <= 0.0 || volume >= 1.0) return 0.0;
  double best = kInf;
  for (unsigned r = 0; r < n; ++r) {
    const double p = solve_ball_threshold(n, r, volume);
    if (!(p > 0.0 && p < 1.0)) continue;
    best = std::min(best, hamming_shell_volume({p, r, n}));
  }
  return best;
}

Step3Ratio step3_ratio(unsigned n, double p, unsigned k) {
  check_open_p(p);
  const BinomialSpec spec{n, 1.0 - p};
  spec.validate();
  if (k > n) fail(ErrorCode::kDomain, "k exceeds n");
  long double below = kNegInf;
  long double above = kNegInf;
  for (unsigned j = 0; j < k; ++j) below = log_add(below, log_pmf(spec, j));
  for (unsigned j = k + 1; j <= n; ++j) above = log_add(above, log_pmf(spec, j));
  const long double tail = std::min(below, above);
  if (tail == kNegInf) return {kInf, false};
  return {static_cast<double>(expl(log_pmf(spec, k) - tail)), true};
}

std::vector<double> scan_p_grid(unsigned n, unsigned log_points) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "p-grid needs n >= 1");
  if (log_points < 2) fail(ErrorCode::kInvalidArgument, "p-grid needs at least 2 points");
  std::vector<double> grid;
  grid.reserve(log_points + 1);
  const double lo = std::log(1.0 / (8.0 * n));
  const double hi = std::log(0.5);
  for (unsigned i = 0; i < log_points; ++i) {
    grid.push_back(i + 1 == log_points ? 0.5
                                       : std::exp(lo + (hi - lo) * i / (log_points - 1)));
  }
  grid.push_back(1.0 / (4.0 * n));
  std::sort(grid.begin(), grid.end());
  return grid;
}

namespace {

struct NScan {
  std::vector<ScanRow> rows;
  std::uint64_t count = 0;
  double min_scaled = std::numeric_limits<double>::quiet_NaN();
  ScanRow argmin;
};

NScan scan_one(unsigned n, const std::vector<double>& grid, bool keep_rows) {
  NScan out;
  std::vector<long double> below(n + 1);
  std::vector<long double> above(n + 1);
  for (double p : grid) {
    check_open_p(p);
    const BinomialSpec spec{n, 1.0 - p};
    const std::vector<long double> lp = log_pmf_table(spec);
    below[0] = kNegInf;
    for (unsigned k = 1; k <= n; ++k) below[k] = log_add(below[k - 1], lp[k - 1]);
    above[n] = kNegInf;
    for (unsigned k = n; k-- > 0;) above[k] = log_add(above[k + 1], lp[k + 1]);
    const double sd = std::sqrt(n * p * (1.0 - p));
    for (unsigned k = 0; k <= n; ++k) {
      const long double tail = std::min(below[k], above[k]);
      if (tail == kNegInf) continue;
      ScanRow row{n, p, k, static_cast<double>(expl(lp[k] - tail)), 0.0};
      row.scaled = row.ratio * sd;
      if (std::isnan(out.min_scaled) || row.scaled < out.min_scaled) {
        out.min_scaled = row.scaled;
        out.argmin = row;
      }
      ++out.count;
      if (keep_rows) out.rows.push_back(row);
    }
  }
  return out;
}

ScanSummary reduce(unsigned n_max, std::vector<NScan>& per_n,
                   const std::function<void(const ScanRow&)>& sink) {
  ScanSummary summary;
  summary.c_hat = kInf;
  summary.per_n_min.assign(n_max + 1, std::numeric_limits<double>::quiet_NaN());
  for (unsigned n = 2; n <= n_max; ++n) {
    NScan& s = per_n[n];
    summary.per_n_min[n] = s.min_scaled;
    if (s.min_scaled < summary.c_hat) {
      summary.c_hat = s.min_scaled;
      summary.argmin = s.argmin;
    }
    summary.rows += s.count;
    if (sink) {
      for (const ScanRow& row : s.rows) sink(row);
    }
    s.rows.clear();
    s.rows.shrink_to_fit();
  }
  return summary;
}

}  // namespace

ScanSummary binom_bound_scan(unsigned n_max, unsigned log_points,
                             const std::function<void(const ScanRow&)>& sink,
                             unsigned threads) {
  if (n_max < 2) fail(ErrorCode::kInvalidArgument, "scan needs n_max >= 2");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_max - 1);

  std::vector<NScan> per_n(n_max + 1);
  std::atomic<unsigned> next{2};
  const bool keep_rows = static_cast<bool>(sink);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (unsigned n = next++; n <= n_max; n = next++) {
          per_n[n] = scan_one(n, scan_p_grid(n, log_points), keep_rows);
        }
      });
    }
  }
  return reduce(n_max, per_n, sink);
}

ScanSummary binom_bound_scan(unsigned n_max, const std::vector<double>& p_grid,
                             const std::function<void(const ScanRow&)>& sink) {
  if (n_max < 2) fail(ErrorCode::kInvalidArgument, "scan needs n_max >= 2");
  if (p_grid.empty()) fail(ErrorCode::kInvalidArgument, "empty p-grid");
  std::vector<NScan> per_n(n_max + 1);
  for (unsigned n = 2; n <= n_max; ++n) per_n[n] = scan_one(n, p_grid, static_cast<bool>(sink));
  return reduce(n_max, per_n, sink);
}

namespace {

void check_growth_args(unsigned n, double p, double x) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "growth thresholds need n >= 1");
  if (!(x > 0.0 && std::isfinite(x))) fail(ErrorCode::kDomain, "x must be positive");
  if (!(p > 0.0 && p <= 0.5)) fail(ErrorCode::kDomain, "p must lie in (0, 1/2]");
}

}  // namespace

GrowthThresholds growth_thresholds(unsigned n, double p, double x) {
  check_growth_args(n, p, x);
  const double s = 1.0 + x;
  GrowthThresholds out;
  // G(j+1)/G(j) >= s  <=>  j <= t1
  const double t1 = (n * (1.0 - p) - s * p) / ((s - 1.0) * p + 1.0);
  if (t1 >= 0.0) {
    out.k1 = static_cast<unsigned>(std::min<double>(std::floor(t1), n - 1.0)) + 1;
  }
  // G(k+1)/G(k) <= 1/s  <=>  k >= t2
  const double t2 = (s * n * (1.0 - p) - p) / (p + s * (1.0 - p));
  if (t2 <= 0.0) {
    out.k2 = 0;
  } else {
    const double c = std::ceil(t2);
    out.k2 = c > n - 1.0 ? n : static_cast<unsigned>(c);
  }
  return out;
}

GrowthThresholds growth_thresholds_by_ratios(unsigned n, double p, double x) {
  check_growth_args(n, p, x);
  const double s = 1.0 + x;
  const std::vector<long double> lp = log_pmf_table(BinomialSpec{n, 1.0 - p});
  GrowthThresholds out{0, n};
  for (unsigned k = 1; k <= n; ++k) {
    if (expl(lp[k] - lp[k - 1]) >= s) out.k1 = k;
  }
  for (unsigned k = n; k-- > 0;) {
    if (expl(lp[k + 1] - lp[k]) <= 1.0L / s) out.k2 = k;
  }
  return out;
}

double stirling_check(unsigned n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "stirling check needs n >= 1");
  const long double log_value =
      log_choose(n, n / 2) + 0.5L * logl(n) - n * logl(2.0L);
  return static_cast<double>(fabsl(expl(log_value) - sqrtl(2.0L / 3.14159265358979323846264338327950288L)));
}

double berry_esseen_bound(unsigned n, double p) {
  const double var = n * p * (1.0 - p);
  if (!(var > 0.0)) return kInf;
  return 0.4215 * (p * p + (1.0 - p) * (1.0 - p)) / std::sqrt(var);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace l0iso::binom
