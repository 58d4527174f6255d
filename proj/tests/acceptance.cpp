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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "l0iso/binomial.hpp"
#include "l0iso/char_sampler.hpp"
#include "l0iso/gridset.hpp"
#include "l0iso/hypercube.hpp"
#include "l0iso/rng.hpp"
#include "l0iso/splitting.hpp"

#ifndef L0ISO_CLI
#define L0ISO_CLI "l0iso"
#endif
#ifndef L0ISO_TEST_DATA
#define L0ISO_TEST_DATA "."
#endif

namespace {

using namespace l0iso;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string str(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Halving construction
Outcome halving() {
  const double bound = 4.0 * std::sqrt(8.0 / M_PI) + 1.0;
  const double target = 4.0 * std::sqrt(2.0 / M_PI);
  double worst = 0.0;
  unsigned worst_n = 0;
  bool disjoint = true;
  double at24 = 0.0;
  for (unsigned n = 2; n <= 24; ++n) {
    const cube::HalvingConstruction h = cube::halving_construction(n);
    disjoint = disjoint && cube::are_axis_disjoint(h.s1, h.s2);
    const double scaled = h.ratio().to_double() * std::sqrt(static_cast<double>(n));
    if (scaled > worst) worst = scaled, worst_n = n;
    if (n == 24) at24 = scaled;
  }
  const double rel = std::fabs(at24 - target) / target;
  return {disjoint && worst <= bound && rel <= 0.25,
          str("axis-disjoint=%s max ratio*sqrt(n)=%.4f at n=%u (bound %.4f); n=24: %.4f vs "
              "%.4f (%.1f%% off, limit 25%%)",
              disjoint ? "yes" : "no", worst, worst_n, bound, at24, target, 100 * rel)};
}

// 2. Central binomial coefficient
Outcome stirling() {
  const double diff = binom::stirling_check(10000);
  const double rel = diff / std::sqrt(2.0 / M_PI);
  return {diff < 0.008 && rel < 0.01, str("|C(n,n/2)sqrt(n)/2^n - sqrt(2/pi)| = %.3g at n=1e4 "
                                          "(relative %.3g)", diff, rel)};
}

// 3. Grid brute force against anchored sets and Hamming balls
Outcome grid_brute_force() {
  bool ok = true;
  std::string detail;
  for (unsigned k : {2u, 3u}) {
    const grid::GridSpec spec{2, k};
    const std::uint64_t cells = spec.cell_count();
    const Rational psi = cube::psi_grid_exact(2, k).value;

    Rational anchored_min = Rational::infinity();
    std::vector<std::uint64_t> min_boundary(cells + 1, ~std::uint64_t{0});
    grid::for_each_anchored(spec, [&](const grid::GridSet& g) {
      anchored_min = std::min(anchored_min, grid::isoperimetric_ratio(g));
      auto& slot = min_boundary[g.cardinality()];
      slot = std::min(slot, grid::l0_boundary(g).cardinality());
    });
    const bool same = anchored_min == psi;

    unsigned balls = 0, ball_hits = 0;
    for (unsigned t = 1; t <= k; ++t) {
      for (unsigned r = 0; r <= 2; ++r) {
        const grid::GridSet b = grid::hamming_ball(spec, t, r);
        if (b.empty() || b.cardinality() == cells) continue;
        ++balls;
        ball_hits += grid::l0_boundary(b).cardinality() == min_boundary[b.cardinality()];
      }
    }
    bool harper = true;
    for (std::uint64_t m = 1; m < cells; ++m) {
      const double lower = binom::harper_boundary_bound(2, static_cast<double>(m) / cells);
      harper = harper && static_cast<double>(min_boundary[m]) / cells >= lower - 1e-9;
    }
    ok = ok && same && balls == ball_hits && harper;
    detail += str("k=%u: psi=%s anchored min=%s, balls at minimum %u/%u, Harper bound %s; ", k,
                  psi.to_string().c_str(), anchored_min.to_string().c_str(), ball_hits, balls,
                  harper ? "holds" : "violated");
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// 4. Shaking
Outcome shaking() {
  auto rng = make_rng(2026, 4);
  unsigned violations[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 1000; ++trial) {
    const grid::GridSpec spec{1 + static_cast<unsigned>(uniform_index(rng, 5)),
                              2 + static_cast<unsigned>(uniform_index(rng, 4))};
    const double density = 0.05 + 0.4 * uniform01(rng);
    grid::GridSet s1(spec);
    for (std::uint64_t c = 0; c < spec.cell_count(); ++c) {
      if (uniform01(rng) < density) s1.insert(c);
    }
    const grid::GridSet ring = grid::l0_boundary(s1);
    grid::GridSet s2(spec);
    for (std::uint64_t c = 0; c < spec.cell_count(); ++c) {
      if (!s1.contains(c) && !ring.contains(c) && uniform01(rng) < 0.7) s2.insert(c);
    }
    const grid::GridSet t1 = grid::full_shake(s1, grid::Direction::kPlus);
    const grid::GridSet t2 = grid::full_shake(s2, grid::Direction::kMinus);
    violations[0] += grid::volume(t1) != grid::volume(s1);
    violations[1] += !grid::are_axis_disjoint(t1, t2);
    violations[2] += grid::l0_boundary(t1).cardinality() > ring.cardinality();
    violations[3] += !grid::is_anchored(grid::full_shake(t1, grid::Direction::kPlus));
  }
  const unsigned total = violations[0] + violations[1] + violations[2] + violations[3];
  return {total == 0, str("1000 pairs: volume %u, axis-disjointness %u, boundary %u, anchoring "
                          "%u violations", violations[0], violations[1], violations[2],
                          violations[3])};
}

// 5. Binomial isoperimetric scan
Outcome binomial_scan() {
  const binom::ScanSummary s = binom::binom_bound_scan(200, 32);
  std::vector<double> running;
  double run = INFINITY;
  for (unsigned n = 2; n <= 200; ++n) {
    run = std::min(run, s.per_n_min[n]);
    if (n > 100) running.push_back(run);
  }
  std::vector<double> sorted = running;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[49] + sorted[50]);
  double spread = 0.0;
  for (double v : running) spread = std::max(spread, std::fabs(v - median) / median);
  return {s.c_hat >= 0.1 && spread <= 0.1,
          str("%llu rows, min ratio*sqrt(np(1-p)) = %.6f at n=%u p=%.3g k=%u; running minimum "
              "over n in [101,200] within %.2f%% of its median",
              static_cast<unsigned long long>(s.rows), s.c_hat, s.argmin.n, s.argmin.p,
              s.argmin.k, 100 * spread)};
}

// 6. Joint indicator monotonicity. Odd distances tie exactly with the next
// even one, so the floating path compares with a relative tolerance.
Outcome joint_monotone() {
  unsigned violations = 0;
  for (unsigned n = 1; n <= 200; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      if (n <= 64) {
        violations += split::joint_indicator_numerator(n, k) >
                      split::joint_indicator_numerator(n, k - 1);
      } else {
        const double prev = split::joint_indicator_prob(n, k - 1);
        violations += split::joint_indicator_prob(n, k) > prev * (1.0 + 1e-13);
      }
    }
  }
  return {violations == 0, str("%u violations over n <= 200 (exact integers for n <= 64, relative 1e-13 above)",
                               violations)};
}

// 7. Fluctuation gap
Outcome fluctuation() {
  double smallest = INFINITY;
  unsigned at = 0;
  for (unsigned n = 6; n <= 600; ++n) {
    const double g = split::fluctuation_gap(n);
    if (g < smallest) smallest = g, at = n;
  }
  bool ok = smallest > 0.0;
  std::string detail = str("min gap %.4f at n=%u", smallest, at);
  for (unsigned n : {36u, 72u, 144u}) {
    const split::FluctuationCheck f = split::fluctuation_check(n);
    ok = ok && f.gap > f.lower_bound && f.gap >= f.p_h1 * f.p_h2;
    detail += str("; n=%u gap %.4f, exact P(H1)P(H2) %.5f, BE-slackened bound %.5f", n, f.gap,
                  f.p_h1 * f.p_h2, f.lower_bound);
  }
  return {ok, detail};
}

std::vector<split::BalancedWeight> generated_weights(unsigned count, unsigned n_lo, unsigned n_hi,
                                                     std::uint64_t seed) {
  std::vector<split::BalancedWeight> out;
  out.reserve(count);
  auto rng = make_rng(seed, 0);
  for (unsigned i = 0; i < count; ++i) {
    const unsigned n = n_lo + static_cast<unsigned>(uniform_index(rng, n_hi - n_lo + 1));
    const unsigned pairs = 1 + static_cast<unsigned>(uniform_index(rng, 3 * n));
    out.push_back(i % 2 ? split::random_antipodal_weight(n, pairs, rng)
                        : split::random_ipf_weight(n, pairs, rng));
  }
  return out;
}

// 8. Small weight
Outcome small_weight() {
  unsigned violations = 0;
  double worst = 0.0;
  for (const auto& w : generated_weights(10000, 6, 12, 8)) {
    const double v = split::small_weight_max(w).value;
    worst = std::max(worst, v);
    violations += v > 0.75 + 1e-12;
  }
  return {violations == 0, str("10000 weights, all centres: max small-weight sum %.4f, %u "
                               "violations", worst, violations)};
}

// 9. Variance
constexpr double kVarianceFixture = 0.07;

Outcome variance() {
  double worst = 0.0;
  for (const auto& w : generated_weights(4000, 6, 16, 9)) {
    worst = std::max(worst, split::variance_exact(w));
  }
  return {worst <= 0.25 - 1e-3 && worst <= kVarianceFixture,
          str("4000 weights, n in [6,16]: max variance %.5f (placeholder 0.249, fixture %.2f)",
              worst, kVarianceFixture)};
}

// 10. Splitting certificates
Outcome certificates() {
  bool ok = true;
  std::string detail;
  for (unsigned n : {16u, 20u, 24u}) {
    auto rng = make_rng(10, n);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto w = i % 2 ? split::random_antipodal_weight(n, 64, rng)
                           : split::random_ipf_weight(n, 64, rng);
      const auto r = split::certify_psi_upper_bound(w, {10000, 1000u * n + i, 16, 0});
      worst = std::max(worst, r.ratio);
    }
    const double limit = 8.0 / std::sqrt(static_cast<double>(n));
    ok = ok && worst <= limit;
    detail += str("n=%u max ratio %.4f (limit %.4f); ", n, worst, limit);
  }
  unsigned adhoc = 0, case_one = 0, adhoc_bad = 0;
  auto rng = make_rng(10, 0);
  for (unsigned n = 4; n <= 12; ++n) {
    for (unsigned pairs = 1; pairs <= 3; ++pairs) {
      const auto w = split::random_antipodal_weight(n, pairs, rng);
      const auto r = split::certify_psi_upper_bound(w, {2000, n, n + 1, 1});
      if (!r.adhoc) continue;
      ++adhoc;
      const double cap = std::ldexp(1.0, static_cast<int>(n + 2));
      adhoc_bad += !(r.adhoc->ratio <= cap);
      if (r.adhoc->case_id == 1) {
        ++case_one;
        adhoc_bad += !(r.adhoc->ratio < 2.0);
      }
    }
  }
  ok = ok && adhoc_bad == 0;
  detail += str("ad-hoc branch: %u weights, %u in case 1, %u over bound", adhoc, case_one,
                adhoc_bad);
  return {ok, detail};
}

// 11. CHAR stationarity
Outcome stationarity() {
  using namespace sampler;
  bool ok = true;
  std::string detail;
  const std::pair<const char*, ConvexBody> bodies[] = {
      {"cube", ConvexBody::box({0, 0, 0}, {1, 1, 1})},
      {"skewed box", ConvexBody::box({0, -2}, {0.01, 3})}};
  for (const auto& [name, body] : bodies) {
    DiagnosticsOptions o;
    o.steps = 101000;
    o.burn_in = 1000;
    o.seed = 1;
    const DiagnosticsReport r = run_diagnostics(body, o);
    double pmin = 1.0;
    for (const auto& c : r.coordinates) pmin = std::min(pmin, c.p_value);
    ok = ok && pmin > 0.01 && r.membership_violations == 0;
    detail += str("%s min KS p %.3f; ", name, pmin);
  }
  const DetailedBalanceReport d = transition_symmetry_test(8, 1000000, 1);
  ok = ok && d.passed;
  detail += str("detailed balance z=%.2f on %llu pairs", d.z,
                static_cast<unsigned long long>(d.pairs));
  return {ok, detail};
}

// 12. CLI determinism
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& work) {
  const std::string cli = L0ISO_CLI;
  const std::string data = L0ISO_TEST_DATA;
  struct Run {
    std::string args;
    std::vector<std::string> files;
  };
  const std::vector<Run> runs = {
      {"psi-exact --n 2 --k 3", {}},
      {"construct --n 6 --members", {}},
      {"hamming-scan --nmax 60", {}},
      {"shake " + data + "/grid_n3k3.json --direction plus -o " + work + "/shaken.json",
       {"shaken.json"}},
      {"split --generate 16 --pairs 64 --trials 5000 --seed 7", {}},
      {"split --body " + data + "/simplex3.json --trials 2000 --seed 7", {}},
      {"explore --generate 10 --generator antipodal --seed 3 --center 0000000000", {}},
      {"sample --body " + data + "/simplex3.json --chain har --steps 6000 --seed 5 "
       "--trajectory " + work + "/trajectory.csv",
       {"trajectory.csv"}},
  };
  unsigned same = 0;
  std::string failed;
  for (const Run& r : runs) {
    std::string out[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string stdout_path = work + "/stdout." + std::to_string(rep);
      const std::string cmd = "\"" + cli + "\" " + r.args + " > " + stdout_path;
      if (std::system(cmd.c_str()) != 0) {
        out[rep] = "exit failure " + std::to_string(rep);
        continue;
      }
      out[rep] = slurp(stdout_path);
      for (const std::string& f : r.files) out[rep] += "\n--\n" + slurp(work + "/" + f);
    }
    if (out[0] == out[1] && !out[0].empty()) {
      ++same;
    } else {
      failed += " [" + r.args.substr(0, r.args.find(' ')) + "]";
    }
  }
  return {same == runs.size(),
          str("%u/%zu commands byte-identical across two runs%s", same, runs.size(),
              failed.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string work = argc > 1 ? argv[1] : ".";
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"halving construction ratio", 1, halving},
      {"central binomial limit", 1, stirling},
      {"grid brute force vs anchored sets and balls", 60, grid_brute_force},
      {"shaking invariants", 60, shaking},
      {"binomial boundary scan", 300, binomial_scan},
      {"joint indicator monotone", 60, joint_monotone},
      {"fluctuation gap", 60, fluctuation},
      {"small-weight bound", 300, small_weight},
      {"variance bound", 300, variance},
      {"splitting certificates", 600, certificates},
      {"coordinate hit-and-run stationarity", 120, stationarity},
      {"CLI determinism", 300, [&] { return determinism(work); }},
  };
  unsigned passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= criteria[i].budget_s;
    const bool ok = o.pass && in_time;
    passed += ok;
    std::printf("%s %2zu %s: %s [%.2fs of %.0fs]\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str(), secs, criteria[i].budget_s);
    std::fflush(stdout);
  }
  std::printf("%u/%zu criteria passed\n", passed, criteria.size());
  return passed == criteria.size() ? 0 : 1;
}
