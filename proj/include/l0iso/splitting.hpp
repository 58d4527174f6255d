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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "l0iso/hypercube.hpp"
#include "l0iso/rational.hpp"

namespace l0iso::split {

inline constexpr double kBalanceTolerance = 1e-12;

struct WeightEntry {
  std::uint32_t s = 0;  // vertex code, coordinate i in bit i
  double w = 0.0;

  friend bool operator==(const WeightEntry&, const WeightEntry&) = default;
};

// Sparse nonnegative mass on {0,1}^n, kept sorted by vertex code with zero
// entries dropped. Balance is a checkable property, not a constructor
// requirement.
class BalancedWeight {
 public:
  // Merges duplicate vertices. Throws kDomain for negative or non-finite
  // masses and kDimension for codes outside {0,1}^n.
  BalancedWeight(unsigned n, std::vector<WeightEntry> entries);

  unsigned dimension() const noexcept { return n_; }
  const std::vector<WeightEntry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }

  double at(std::uint32_t s) const;
  double total() const;
  // ones[i] = mass of {s : s_i = 1}.
  std::vector<double> ones_marginals() const;
  // max(|total - 1|, max_i |mass{s_i = 1} - 1/2|, max_i |mass{s_i = 0} - 1/2|)
  double balance_error() const;
  bool is_balanced(double tol = kBalanceTolerance) const { return balance_error() <= tol; }

  // Dense table over all 2^n vertices; n <= 24.
  std::vector<double> dense() const;

 private:
  unsigned n_;
  std::vector<WeightEntry> entries_;
};

// Throws kBalance when w is not balanced within tol.
void require_balanced(const BalancedWeight& w, double tol = kBalanceTolerance);

BalancedWeight uniform_weight(unsigned n);

// sum_j m_j (delta_{s_j} + delta_{complement s_j}) / 2 with sum_j m_j = 1.
BalancedWeight antipodal_weight(unsigned n, std::span<const WeightEntry> pairs);

struct IpfResult {
  std::vector<WeightEntry> entries;
  unsigned rounds = 0;
  bool converged = false;
  double error = 0.0;
};

// Iterative proportional fitting: rescale the s_i = 0 and s_i = 1 halves of
// the mass to 1/2 for i = 0..n-1, repeated until every marginal is within tol.
IpfResult fit_marginals(unsigned n, std::vector<WeightEntry> entries,
                        double tol = kBalanceTolerance, unsigned max_rounds = 10000);

// Random antipodal mixture over `pairs` distinct complementary pairs.
BalancedWeight random_antipodal_weight(unsigned n, unsigned pairs, std::mt19937_64& rng);

// Random positive masses on a complement-closed support of `pairs` pairs,
// fitted by IPF. Non-converging draws are redrawn (up to 100 times).
BalancedWeight random_ipf_weight(unsigned n, unsigned pairs, std::mt19937_64& rng);

// Bands by Hamming distance d = <s, z>: S1 = {d < floor(n/2)},
// S2 = {d > ceil(n/2)}, S3 = the rest.
struct SplitCertificate {
  cube::BitVector z{1, 0};
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double ratio = 0.0;  // c / min(a, b), +inf when min(a, b) == 0
};

SplitCertificate split(const BalancedWeight& w, const cube::BitVector& z);

struct BandMasses {
  Rational a;
  Rational b;
  Rational c;
};

// Expectation of (A, B, C) over uniform z; independent of the weight.
// Exact for n <= 62.
BandMasses expected_band_masses(unsigned n);

// E[I_s I_t] for <s, t> = k: the probability that both s and t land in S1.
// Numerator over 2^n, exact for n <= 64.
std::uint64_t joint_indicator_numerator(unsigned n, unsigned k);

// Exact (as a dyadic fraction) for n <= 64, long double summation above.
double joint_indicator_prob(unsigned n, unsigned k);

// 1/2 - joint_indicator_prob(n, floor(n/3)); n >= 3.
double fluctuation_gap(unsigned n);

// The explicit sub-event H1 x H2 of E and not F, for n = 6r:
//   H1 = {|z1| in [2r - sqrt r, 2r]},  |z1| ~ Bin(4r, 1/2)
//   H2 = {|z2| in [r - 3 sqrt r, r - 2 sqrt r]},  |z2| ~ Bin(2r, 1/2)
struct FluctuationCheck {
  unsigned n = 0;
  double gap = 0.0;
  double p_h1 = 0.0;  // exact binomial window masses
  double p_h2 = 0.0;
  double normal_h1 = 0.0;  // Phi(0) - Phi(-1)
  double normal_h2 = 0.0;  // Phi(-2 sqrt 2) - Phi(-3 sqrt 2)
  double be_h1 = 0.0;      // 2 * BE(4r, 1/2)
  double be_h2 = 0.0;      // 2 * BE(2r, 1/2)
  double lower_bound = 0.0;  // max(0, normal_h1 - be_h1) * max(0, normal_h2 - be_h2)
};

// Requires n divisible by 6.
FluctuationCheck fluctuation_check(unsigned n);

// sum of w(t) over <s, t> < floor(n/3).
double small_weight_sum(const BalancedWeight& w, const cube::BitVector& s);

struct SmallWeightMax {
  double value = 0.0;
  std::uint32_t center = 0;  // smallest maximizing code
};

// Maximum of small_weight_sum over all 2^n centers; n <= 20.
SmallWeightMax small_weight_max(const BalancedWeight& w);

// hist[d] = sum over ordered pairs (s, t) with <s, t> = d of w(s) w(t).
std::vector<double> distance_histogram(const BalancedWeight& w);

inline constexpr std::size_t kMaxVarianceSupport = std::size_t{1} << 16;

// Var over uniform z of A = w(S1). Throws kCapacity above kMaxVarianceSupport
// support entries.
double variance_exact(const BalancedWeight& w);

struct AdhocCertificate {
  unsigned case_id = 0;  // 1, 2 or 3
  cube::BitVector s{1, 0};  // S1 = {s}
  cube::BitVector t{1, 0};  // S2 = {t}
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double ratio = 0.0;
};

// Three-case construction on the heaviest vertices of each half of the first
// coordinate. Requires a balanced w and n >= 2.
AdhocCertificate adhoc_certificate(const BalancedWeight& w);

struct RandomSearch {
  std::optional<SplitCertificate> best;  // empty when every trial is degenerate
  std::uint64_t trials = 0;
  std::uint64_t degenerate = 0;  // trials with min(A, B) == 0
  std::uint64_t best_trial = 0;
};

// Draws `trials` uniform z from stream 0 of `seed` and keeps the first trial
// attaining the minimum ratio. Evaluation is parallel; the result does not
// depend on `threads`.
RandomSearch random_certificate(const BalancedWeight& w, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads = 0);

struct CertifyOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned n0 = 16;
  unsigned threads = 0;
};

struct CertifyResult {
  bool adhoc_used = false;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double ratio = 0.0;
  RandomSearch search;
  std::optional<AdhocCertificate> adhoc;
};

// n >= n0: random search. n < n0: the ad-hoc certificate, replaced by the
// random search result when that is strictly better. Throws kFailed when no
// finite certificate exists.
CertifyResult certify_psi_upper_bound(const BalancedWeight& w, const CertifyOptions& options);

struct BandSums {
  double lhs = 0.0;  // sum over <s, t> < floor(n/2) of w(s) w(t)
  double rhs = 0.0;  // sum over <s, t> > ceil(n/2)
};

BandSums open_problem_explore(const BalancedWeight& w);

// Weighted points in R^n; weights are normalized on construction.
class PointCloud {
 public:
  PointCloud(unsigned n, std::vector<double> coords, std::vector<double> weights);

  unsigned dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * n_, n_};
  }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  unsigned n_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

// Membership test plus a bounding box containing every member.
struct MembershipBody {
  unsigned n = 0;
  std::vector<double> lo;
  std::vector<double> hi;
  std::function<bool(std::span<const double>)> contains;
};

// Uniform rejection samples from the bounding box: `draws` proposals from
// stream 0 of `seed`, accepted points weighted equally. Throws kDegenerate
// when nothing is accepted.
PointCloud sample_body(const MembershipBody& body, std::uint64_t draws, std::uint64_t seed);

// Per-coordinate weighted median: the smallest value whose cumulative mass
// is at least 1/2.
std::vector<double> median_point(const PointCloud& cloud);

struct OrthantWeights {
  std::optional<BalancedWeight> weight;
  double raw_error = 0.0;  // balance error before remediation
  bool remediated = false;
  unsigned ipf_rounds = 0;
};

// Mass of K_s = {x : x_i <= p_i if s_i = 0, x_i > p_i if s_i = 1}. When the
// raw weight is off balance by more than 1e-12 but at most `tolerance`, IPF
// restores balance on the same support. Throws kBalance otherwise, or when
// IPF does not converge.
OrthantWeights orthant_weights(const PointCloud& cloud, std::span<const double> p,
                               double tolerance);

}  // namespace l0iso::split
