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

#include "l0iso/splitting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "l0iso/binomial.hpp"
#include "l0iso/error.hpp"
#include "l0iso/rng.hpp"

namespace l0iso::split {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned floor_half(unsigned n) { return n / 2; }
unsigned ceil_half(unsigned n) { return (n + 1) / 2; }

unsigned distance(std::uint32_t a, std::uint32_t b) {
  return static_cast<unsigned>(std::popcount(a ^ b));
}

// In-place unnormalized Walsh-Hadamard transform.
void fwht(std::vector<double>& a) {
  for (std::size_t len = 1; len < a.size(); len <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = a[j];
        const double v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

// result[s] = sum_t a[t] b[s xor t]
std::vector<double> xor_convolve(std::vector<double> a, std::vector<double> b) {
  fwht(a);
  fwht(b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  fwht(a);
  const double scale = 1.0 / static_cast<double>(a.size());
  for (double& x : a) x *= scale;
  return a;
}

unsigned __int128 choose128(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::uint32_t> distinct_pair_representatives(unsigned n, unsigned pairs,
                                                         std::mt19937_64& rng) {
  const std::uint64_t available = std::uint64_t{1} << (n - 1);
  if (pairs == 0 || pairs > available) {
    fail(ErrorCode::kInvalidArgument, "pair count must lie in [1, 2^(n-1)]");
  }
  std::vector<std::uint32_t> reps;
  reps.reserve(pairs);
  if (2 * static_cast<std::uint64_t>(pairs) > available) {
    std::vector<std::uint32_t> all(available);
    std::iota(all.begin(), all.end(), 0u);
    for (unsigned i = 0; i < pairs; ++i) {
      std::swap(all[i], all[i + uniform_index(rng, available - i)]);
    }
    reps.assign(all.begin(), all.begin() + pairs);
  } else {
    std::unordered_set<std::uint32_t> seen;
    while (reps.size() < pairs) {
      const auto r = static_cast<std::uint32_t>(uniform_index(rng, available));
      if (seen.insert(r).second) reps.push_back(r);
    }
  }
  return reps;
}

}  // namespace

BalancedWeight::BalancedWeight(unsigned n, std::vector<WeightEntry> entries) : n_(n) {
  cube::check_dimension(n);
  const std::uint32_t mask = cube::full_mask(n);
  for (const WeightEntry& e : entries) {
    if (e.s & ~mask) fail(ErrorCode::kDimension, "weight vertex outside {0,1}^n");
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
      fail(ErrorCode::kDomain, "weights must be finite and nonnegative");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.s < b.s; });
  for (const WeightEntry& e : entries) {
    if (e.w == 0.0) continue;
    if (!entries_.empty() && entries_.back().s == e.s) {
      entries_.back().w += e.w;
    } else {
      entries_.push_back(e);
    }
  }
}

double BalancedWeight::at(std::uint32_t s) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                                   [](const WeightEntry& e, std::uint32_t v) { return e.s < v; });
  return it != entries_.end() && it->s == s ? it->w : 0.0;
}

double BalancedWeight::total() const {
  long double sum = 0.0L;
  for (const WeightEntry& e : entries_) sum += e.w;
  return static_cast<double>(sum);
}

std::vector<double> BalancedWeight::ones_marginals() const {
  std::vector<long double> acc(n_, 0.0L);
  for (const WeightEntry& e : entries_) {
    for (std::uint32_t rest = e.s; rest; rest &= rest - 1) acc[std::countr_zero(rest)] += e.w;
  }
  return {acc.begin(), acc.end()};
}

double BalancedWeight::balance_error() const {
  const double tot = total();
  double err = std::fabs(tot - 1.0);
  for (double m1 : ones_marginals()) {
    err = std::max({err, std::fabs(m1 - 0.5), std::fabs(tot - m1 - 0.5)});
  }
  return err;
}

std::vector<double> BalancedWeight::dense() const {
  std::vector<double> out(std::size_t{1} << n_, 0.0);
  for (const WeightEntry& e : entries_) out[e.s] = e.w;
  return out;
}

void require_balanced(const BalancedWeight& w, double tol) {
  const double err = w.balance_error();
  if (err > tol) {
    fail(ErrorCode::kBalance, "weight is not balanced (error " + std::to_string(err) + ")");
  }
}

BalancedWeight uniform_weight(unsigned n) {
  cube::check_dimension(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<WeightEntry> entries(size);
  const double mass = std::ldexp(1.0, -static_cast<int>(n));
  for (std::uint64_t s = 0; s < size; ++s) entries[s] = {static_cast<std::uint32_t>(s), mass};
  return BalancedWeight(n, std::move(entries));
}

BalancedWeight antipodal_weight(unsigned n, std::span<const WeightEntry> pairs) {
  cube::check_dimension(n);
  long double sum = 0.0L;
  for (const WeightEntry& e : pairs) sum += e.w;
  if (!(sum > 0.0L)) fail(ErrorCode::kDegenerate, "antipodal weight needs positive mass");
  std::vector<WeightEntry> entries;
  const std::uint32_t mask = cube::full_mask(n);
  for (const WeightEntry& e : pairs) {
    const double half = static_cast<double>(e.w / sum / 2.0L);
    entries.push_back({e.s, half});
    entries.push_back({~e.s & mask, half});
  }
  return BalancedWeight(n, std::move(entries));
}

IpfResult fit_marginals(unsigned n, std::vector<WeightEntry> entries, double tol,
                        unsigned max_rounds) {
  cube::check_dimension(n);
  IpfResult out;
  std::erase_if(entries, [](const WeightEntry& e) { return !(e.w > 0.0); });
  out.entries = std::move(entries);
  auto& es = out.entries;
  if (es.empty()) return out;
  for (out.rounds = 1; out.rounds <= max_rounds; ++out.rounds) {
    for (unsigned i = 0; i < n; ++i) {
      long double m0 = 0.0L;
      long double m1 = 0.0L;
      for (const WeightEntry& e : es) (e.s >> i & 1u ? m1 : m0) += e.w;
      if (m0 == 0.0L || m1 == 0.0L) {
        out.error = 0.5;
        return out;
      }
      const double f0 = static_cast<double>(0.5L / m0);
      const double f1 = static_cast<double>(0.5L / m1);
      for (WeightEntry& e : es) e.w *= (e.s >> i & 1u) ? f1 : f0;
    }
    out.error = BalancedWeight(n, es).balance_error();
    if (out.error <= tol) {
      out.converged = true;
      return out;
    }
  }
  out.rounds = max_rounds;
  return out;
}

BalancedWeight random_antipodal_weight(unsigned n, unsigned pairs, std::mt19937_64& rng) {
  cube::check_dimension(n);
  std::vector<WeightEntry> reps;
  for (std::uint32_t r : distinct_pair_representatives(n, pairs, rng)) {
    reps.push_back({r, exponential(rng)});
  }
  return antipodal_weight(n, reps);
}

BalancedWeight random_ipf_weight(unsigned n, unsigned pairs, std::mt19937_64& rng) {
  cube::check_dimension(n);
  const std::uint32_t mask = cube::full_mask(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<WeightEntry> entries;
    for (std::uint32_t r : distinct_pair_representatives(n, pairs, rng)) {
      entries.push_back({r, exponential(rng)});
      entries.push_back({~r & mask, exponential(rng)});
    }
    IpfResult fit = fit_marginals(n, std::move(entries));
    if (fit.converged) return BalancedWeight(n, std::move(fit.entries));
  }
  fail(ErrorCode::kFailed, "IPF did not converge in 100 draws");
}

SplitCertificate split(const BalancedWeight& w, const cube::BitVector& z) {
  const unsigned n = w.dimension();
  if (z.dimension() != n) fail(ErrorCode::kDimension, "split vertex length mismatch");
  const unsigned lo = floor_half(n);
  const unsigned hi = ceil_half(n);
  long double a = 0.0L;
  long double b = 0.0L;
  long double c = 0.0L;
  for (const WeightEntry& e : w.entries()) {
    const unsigned d = distance(e.s, z.bits());
    (d < lo ? a : d > hi ? b : c) += e.w;
  }
  SplitCertificate out{z, static_cast<double>(a), static_cast<double>(b),
                       static_cast<double>(c), kInf};
  const double m = std::min(out.a, out.b);
  if (m > 0.0) out.ratio = out.c / m;
  return out;
}

BandMasses expected_band_masses(unsigned n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "band masses need n >= 1");
  if (n > 62) fail(ErrorCode::kCapacity, "exact band masses limited to n <= 62");
  std::uint64_t a = 0;
  std::uint64_t c = 0;
  for (unsigned k = 0; k <= n; ++k) {
    const auto ck = static_cast<std::uint64_t>(choose128(n, k));
    if (k < floor_half(n)) {
      a += ck;
    } else if (k <= ceil_half(n)) {
      c += ck;
    }
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  return {Rational(a, total), Rational(a, total), Rational(c, total)};
}

std::uint64_t joint_indicator_numerator(unsigned n, unsigned k) {
  if (n == 0 || n > 64) fail(ErrorCode::kCapacity, "exact joint probability needs 1 <= n <= 64");
  if (k > n) fail(ErrorCode::kDomain, "distance exceeds n");
  const long fl = floor_half(n);
  const unsigned m = n - k;
  // cum[j] = sum_{u <= j} C(m, u)
  std::vector<unsigned __int128> cum(m + 1);
  unsigned __int128 run = 0;
  for (unsigned u = 0; u <= m; ++u) cum[u] = run += choose128(m, u);
  unsigned __int128 num = 0;
  for (unsigned v = 0; v <= k; ++v) {
    // u + v < fl and u + k - v < fl
    const long top = std::min<long>(fl - v, fl - static_cast<long>(k) + v) - 1;
    if (top < 0) continue;
    num += choose128(k, v) * cum[std::min<long>(top, m)];
  }
  return static_cast<std::uint64_t>(num);
}

double joint_indicator_prob(unsigned n, unsigned k) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "joint probability needs n >= 1");
  if (k > n) fail(ErrorCode::kDomain, "distance exceeds n");
  if (n <= 64) {
    return std::ldexp(static_cast<double>(joint_indicator_numerator(n, k)), -static_cast<int>(n));
  }
  const long fl = floor_half(n);
  const unsigned m = n - k;
  const std::vector<double> cum = binom::cdf_table({m == 0 ? 1u : m, 0.5});
  long double sum = 0.0L;
  for (unsigned v = 0; v <= k; ++v) {
    const long top = std::min<long>(fl - v, fl - static_cast<long>(k) + v) - 1;
    if (top < 0) continue;
    const long double tail = m == 0 ? 1.0L : cum[std::min<long>(top, m)];
    const long double head = k == 0 ? 1.0L : expl(binom::log_pmf({k, 0.5}, v));
    sum += head * tail;
  }
  return static_cast<double>(sum);
}

double fluctuation_gap(unsigned n) {
  if (n < 3) fail(ErrorCode::kDomain, "fluctuation gap needs n >= 3");
  return 0.5 - joint_indicator_prob(n, n / 3);
}

FluctuationCheck fluctuation_check(unsigned n) {
  if (n == 0 || n % 6 != 0) fail(ErrorCode::kDomain, "fluctuation check needs n = 6r");
  const unsigned r = n / 6;
  const double sr = std::sqrt(static_cast<double>(r));
  FluctuationCheck out;
  out.n = n;
  out.gap = fluctuation_gap(n);

  const auto window = [](unsigned trials, double from, double to) {
    const long lo = static_cast<long>(std::ceil(from));
    const long hi = static_cast<long>(std::floor(to));
    if (hi < lo) return 0.0;
    const binom::BinomialSpec spec{trials, 0.5};
    return binom::binom_cdf(spec, hi) - binom::binom_cdf(spec, lo - 1);
  };
  out.p_h1 = window(4 * r, 2.0 * r - sr, 2.0 * r);
  out.p_h2 = window(2 * r, r - 3.0 * sr, r - 2.0 * sr);

  const double root2 = std::sqrt(2.0);
  out.normal_h1 = binom::normal_cdf(0.0) - binom::normal_cdf(-1.0);
  out.normal_h2 = binom::normal_cdf(-2.0 * root2) - binom::normal_cdf(-3.0 * root2);
  out.be_h1 = 2.0 * binom::berry_esseen_bound(4 * r, 0.5);
  out.be_h2 = 2.0 * binom::berry_esseen_bound(2 * r, 0.5);
  out.lower_bound = std::max(0.0, out.normal_h1 - out.be_h1) *
                    std::max(0.0, out.normal_h2 - out.be_h2);
  return out;
}

double small_weight_sum(const BalancedWeight& w, const cube::BitVector& s) {
  const unsigned n = w.dimension();
  if (s.dimension() != n) fail(ErrorCode::kDimension, "center length mismatch");
  const unsigned radius = n / 3;
  long double sum = 0.0L;
  for (const WeightEntry& e : w.entries()) {
    if (distance(e.s, s.bits()) < radius) sum += e.w;
  }
  return static_cast<double>(sum);
}

SmallWeightMax small_weight_max(const BalancedWeight& w) {
  const unsigned n = w.dimension();
  if (n > 20) fail(ErrorCode::kCapacity, "small_weight_max scans all centers; n <= 20");
  const unsigned radius = n / 3;
  const std::size_t size = std::size_t{1} << n;
  SmallWeightMax out;
  if (radius == 0) return out;
  std::vector<double> ball(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    if (static_cast<unsigned>(std::popcount(x)) < radius) ball[x] = 1.0;
  }
  const std::vector<double> sums = xor_convolve(w.dense(), std::move(ball));
  double best = -kInf;
  for (double v : sums) best = std::max(best, v);
  // Smallest code within rounding of the maximum, then the exact sum there.
  for (std::size_t s = 0; s < size; ++s) {
    if (sums[s] >= best - 1e-12) {
      out.center = static_cast<std::uint32_t>(s);
      break;
    }
  }
  out.value = small_weight_sum(w, cube::BitVector(n, out.center));
  return out;
}

std::vector<double> distance_histogram(const BalancedWeight& w) {
  const unsigned n = w.dimension();
  std::vector<double> hist(n + 1, 0.0);
  const auto& es = w.entries();
  const double pairs = static_cast<double>(es.size()) * static_cast<double>(es.size());
  const double dense_cost = static_cast<double>(std::uint64_t{1} << n) * (3.0 * n + 2.0);
  if (n <= 20 && dense_cost < pairs) {
    std::vector<double> dense = w.dense();
    const std::vector<double> auto_corr = xor_convolve(dense, dense);
    for (std::size_t x = 0; x < auto_corr.size(); ++x) hist[std::popcount(x)] += auto_corr[x];
    return hist;
  }
  std::vector<long double> acc(n + 1, 0.0L);
  for (std::size_t i = 0; i < es.size(); ++i) {
    acc[0] += static_cast<long double>(es[i].w) * es[i].w;
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      acc[distance(es[i].s, es[j].s)] += 2.0L * es[i].w * es[j].w;
    }
  }
  for (unsigned d = 0; d <= n; ++d) hist[d] = static_cast<double>(acc[d]);
  return hist;
}

double variance_exact(const BalancedWeight& w) {
  if (w.support_size() > kMaxVarianceSupport) {
    fail(ErrorCode::kCapacity, "variance_exact supports at most 2^16 support entries");
  }
  const unsigned n = w.dimension();
  const std::vector<double> hist = distance_histogram(w);
  long double second = 0.0L;
  for (unsigned d = 0; d <= n; ++d) {
    if (hist[d] != 0.0) second += static_cast<long double>(hist[d]) * joint_indicator_prob(n, d);
  }
  const long double mean = static_cast<long double>(w.total()) * joint_indicator_prob(n, 0);
  return static_cast<double>(std::max(0.0L, second - mean * mean));
}

AdhocCertificate adhoc_certificate(const BalancedWeight& w) {
  const unsigned n = w.dimension();
  if (n < 2) fail(ErrorCode::kDegenerate, "ad-hoc certificate needs n >= 2");
  require_balanced(w, 1e-9);

  // Two heaviest entries per value of the first coordinate; ties keep the
  // smaller code.
  const WeightEntry* top[2][2] = {{nullptr, nullptr}, {nullptr, nullptr}};
  for (const WeightEntry& e : w.entries()) {
    const WeightEntry** slot = top[e.s & 1u];
    if (!slot[0] || e.w > slot[0]->w) {
      slot[1] = slot[0];
      slot[0] = &e;
    } else if (!slot[1] || e.w > slot[1]->w) {
      slot[1] = &e;
    }
  }

  const auto finish = [&](unsigned case_id, const WeightEntry& s, const WeightEntry& t) {
    if (distance(s.s, t.s) < 2) fail(ErrorCode::kFailed, "ad-hoc pair is not axis-disjoint");
    AdhocCertificate out;
    out.case_id = case_id;
    out.s = cube::BitVector(n, s.s);
    out.t = cube::BitVector(n, t.s);
    out.a = s.w;
    out.b = t.w;
    out.c = std::max(0.0, w.total() - s.w - t.w);
    out.ratio = out.c / std::min(out.a, out.b);
    return out;
  };

  if (!top[0][0] || !top[1][0]) fail(ErrorCode::kBalance, "a half of the first coordinate is empty");
  if (top[0][0]->w > 0.25 && top[1][0]->w > 0.25) return finish(1, *top[0][0], *top[1][0]);
  // Case 2: every s with s_1 = 0 weighs at most 1/4; case 3 mirrors it.
  const unsigned light = top[0][0]->w <= 0.25 ? 0 : 1;
  const WeightEntry& s = *top[1 - light][0];
  const WeightEntry* t = top[light][0];
  const WeightEntry* v = top[light][1];
  if (!v) fail(ErrorCode::kBalance, "light half has a single vertex");
  const WeightEntry& partner = distance(s.s, t->s) >= 2 ? *t : *v;
  return finish(light == 0 ? 2 : 3, s, partner);
}

RandomSearch random_certificate(const BalancedWeight& w, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads) {
  const unsigned n = w.dimension();
  const std::uint32_t mask = cube::full_mask(n);
  std::vector<std::uint32_t> zs(trials);
  auto rng = make_rng(seed, 0);
  for (auto& z : zs) z = static_cast<std::uint32_t>(rng()) & mask;

  struct Partial {
    double ratio = kInf;
    std::uint64_t index = 0;
    std::uint64_t degenerate = 0;
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(trials / 256, 1, threads));
  std::vector<Partial> partial(threads);
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        Partial& p = partial[t];
        const std::uint64_t end = std::min(trials, (t + 1) * chunk);
        for (std::uint64_t i = t * chunk; i < end; ++i) {
          const double r = split(w, cube::BitVector(n, zs[i])).ratio;
          if (std::isinf(r)) ++p.degenerate;
          if (r < p.ratio) {
            p.ratio = r;
            p.index = i;
          }
        }
      });
    }
  }
  RandomSearch out;
  out.trials = trials;
  double best = kInf;
  for (const Partial& p : partial) {
    out.degenerate += p.degenerate;
    if (p.ratio < best) {
      best = p.ratio;
      out.best_trial = p.index;
    }
  }
  if (best < kInf) out.best = split(w, cube::BitVector(n, zs[out.best_trial]));
  return out;
}

CertifyResult certify_psi_upper_bound(const BalancedWeight& w, const CertifyOptions& options) {
  require_balanced(w, 1e-9);
  CertifyResult out;
  out.search = random_certificate(w, options.trials, options.seed, options.threads);
  if (w.dimension() < options.n0) out.adhoc = adhoc_certificate(w);

  const bool random_wins =
      out.search.best && (!out.adhoc || out.search.best->ratio < out.adhoc->ratio);
  if (random_wins) {
    const SplitCertificate& b = *out.search.best;
    out.a = b.a;
    out.b = b.b;
    out.c = b.c;
    out.ratio = b.ratio;
  } else if (out.adhoc) {
    out.adhoc_used = true;
    out.a = out.adhoc->a;
    out.b = out.adhoc->b;
    out.c = out.adhoc->c;
    out.ratio = out.adhoc->ratio;
  } else {
    fail(ErrorCode::kFailed, "all " + std::to_string(out.search.trials) +
                                 " trials gave min(A, B) = 0 (seed " +
                                 std::to_string(options.seed) + ")");
  }
  return out;
}

BandSums open_problem_explore(const BalancedWeight& w) {
  const unsigned n = w.dimension();
  const std::vector<double> hist = distance_histogram(w);
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  for (unsigned d = 0; d <= n; ++d) {
    if (d < floor_half(n)) lhs += hist[d];
    if (d > ceil_half(n)) rhs += hist[d];
  }
  return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

PointCloud::PointCloud(unsigned n, std::vector<double> coords, std::vector<double> weights)
    : n_(n), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (n == 0) fail(ErrorCode::kDimension, "point cloud needs n >= 1");
  if (coords_.size() != weights_.size() * n) {
    fail(ErrorCode::kDimension, "point cloud coordinate count mismatch");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) fail(ErrorCode::kDomain, "non-finite coordinate");
  }
  long double sum = 0.0L;
  for (double x : weights_) {
    if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorCode::kDomain, "invalid point weight");
    sum += x;
  }
  if (!(sum > 0.0L)) fail(ErrorCode::kDegenerate, "body has zero mass");
  for (double& x : weights_) x = static_cast<double>(x / sum);
}

PointCloud sample_body(const MembershipBody& body, std::uint64_t draws, std::uint64_t seed) {
  if (body.lo.size() != body.n || body.hi.size() != body.n || body.n == 0) {
    fail(ErrorCode::kDimension, "bounding box dimension mismatch");
  }
  if (!body.contains) fail(ErrorCode::kInvalidArgument, "membership test missing");
  auto rng = make_rng(seed, 0);
  std::vector<double> coords;
  std::vector<double> x(body.n);
  std::size_t accepted = 0;
  for (std::uint64_t d = 0; d < draws; ++d) {
    for (unsigned i = 0; i < body.n; ++i) {
      x[i] = body.lo[i] + (body.hi[i] - body.lo[i]) * uniform01(rng);
    }
    if (body.contains(x)) {
      coords.insert(coords.end(), x.begin(), x.end());
      ++accepted;
    }
  }
  if (accepted == 0) fail(ErrorCode::kDegenerate, "no Monte Carlo sample hit the body");
  return PointCloud(body.n, std::move(coords), std::vector<double>(accepted, 1.0));
}

std::vector<double> median_point(const PointCloud& cloud) {
  const unsigned n = cloud.dimension();
  std::vector<double> out(n);
  std::vector<std::size_t> order(cloud.size());
  for (unsigned i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cloud.point(a)[i] < cloud.point(b)[i];
    });
    long double cum = 0.0L;
    out[i] = cloud.point(order.back())[i];
    for (std::size_t j = 0; j < order.size(); ++j) {
      cum += cloud.weight(order[j]);
      const double value = cloud.point(order[j])[i];
      const bool last_of_value =
          j + 1 == order.size() || cloud.point(order[j + 1])[i] != value;
      if (last_of_value && cum >= 0.5L - 1e-12L) {
        out[i] = value;
        break;
      }
    }
  }
  return out;
}

OrthantWeights orthant_weights(const PointCloud& cloud, std::span<const double> p,
                               double tolerance) {
  const unsigned n = cloud.dimension();
  if (p.size() != n) fail(ErrorCode::kDimension, "median point dimension mismatch");
  cube::check_dimension(n);
  std::map<std::uint32_t, long double> mass;
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    const auto x = cloud.point(j);
    std::uint32_t s = 0;
    for (unsigned i = 0; i < n; ++i) {
      if (x[i] > p[i]) s |= std::uint32_t{1} << i;
    }
    mass[s] += cloud.weight(j);
  }
  std::vector<WeightEntry> entries;
  for (const auto& [s, m] : mass) entries.push_back({s, static_cast<double>(m)});

  OrthantWeights out;
  BalancedWeight raw(n, entries);
  out.raw_error = raw.balance_error();
  if (out.raw_error <= kBalanceTolerance) {
    out.weight = std::move(raw);
    return out;
  }
  if (out.raw_error > tolerance) {
    fail(ErrorCode::kBalance, "orthant weights off balance by " + std::to_string(out.raw_error) +
                                  " (tolerance " + std::to_string(tolerance) + ")");
  }
  IpfResult fit = fit_marginals(n, std::move(entries));
  if (!fit.converged) {
    fail(ErrorCode::kBalance, "IPF could not balance the orthant weights on their support");
  }
  out.remediated = true;
  out.ipf_rounds = fit.rounds;
  out.weight = BalancedWeight(n, std::move(fit.entries));
  return out;
}

}  // namespace l0iso::split
