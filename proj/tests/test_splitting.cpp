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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>

#include "l0iso/binomial.hpp"
#include "l0iso/error.hpp"
#include "l0iso/rng.hpp"
#include "l0iso/splitting.hpp"
#include "oracle.hpp"

namespace {

using l0iso::Rational;
using l0iso::cube::BitVector;
using namespace l0iso;

std::vector<oracle::Entry> entries_of(const split::BalancedWeight& w) {
  std::vector<oracle::Entry> out;
  for (const auto& e : w.entries()) out.push_back({e.s, e.w});
  return out;
}

split::BalancedWeight weight4() {
  return split::BalancedWeight(4, {{0b0000, 0.0625}, {0b1111, 0.0625},
                                   {0b1100, 0.4375}, {0b0011, 0.4375}});
}

TEST(Weight, MergesAndDropsZeros) {
  const split::BalancedWeight w(2, {{1, 0.25}, {1, 0.25}, {2, 0.5}, {0, 0.0}});
  EXPECT_EQ(w.support_size(), 2u);
  EXPECT_DOUBLE_EQ(w.at(1), 0.5);
  EXPECT_DOUBLE_EQ(w.at(3), 0.0);
  EXPECT_TRUE(w.is_balanced());
  EXPECT_THROW(split::BalancedWeight(2, {{4, 1.0}}), Error);
  EXPECT_THROW(split::BalancedWeight(2, {{1, -0.5}}), Error);
}

TEST(Weight, BalanceError) {
  const split::BalancedWeight w(2, {{0, 0.5}, {1, 0.5}});
  EXPECT_DOUBLE_EQ(w.balance_error(), 0.5);
  EXPECT_THROW(split::require_balanced(w), Error);
  EXPECT_TRUE(split::uniform_weight(6).is_balanced());
}

TEST(Weight, GeneratorsAreBalancedAndSeeded) {
  for (unsigned n = 6; n <= 12; ++n) {
    auto r1 = make_rng(9, n);
    auto r2 = make_rng(9, n);
    const auto a = split::random_ipf_weight(n, 10, r1);
    const auto b = split::random_ipf_weight(n, 10, r2);
    EXPECT_TRUE(a.is_balanced()) << n;
    EXPECT_EQ(a.entries(), b.entries());
    EXPECT_TRUE(split::random_antipodal_weight(n, 10, r1).is_balanced());
  }
}

TEST(Weight, AntipodalHalvesMass) {
  const std::vector<split::WeightEntry> pairs{{0b001, 2.0}, {0b010, 2.0}};
  const auto w = split::antipodal_weight(3, pairs);
  EXPECT_DOUBLE_EQ(w.at(0b001), 0.25);
  EXPECT_DOUBLE_EQ(w.at(0b110), 0.25);
  EXPECT_TRUE(w.is_balanced());
}

TEST(Ipf, FitsMarginals) {
  const auto r = split::fit_marginals(3, {{0b000, 1.0}, {0b111, 3.0}, {0b011, 1.0}, {0b100, 2.0}});
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(split::BalancedWeight(3, r.entries).is_balanced());
}

TEST(Split, UniformFixture) {
  const auto c = split::split(split::uniform_weight(4), BitVector::parse("0000"));
  EXPECT_DOUBLE_EQ(c.a, 0.3125);
  EXPECT_DOUBLE_EQ(c.b, 0.3125);
  EXPECT_DOUBLE_EQ(c.c, 0.375);
  EXPECT_DOUBLE_EQ(c.ratio, 1.2);
}

TEST(Split, BandsAgreeWithDefinition) {
  auto rng = make_rng(4, 0);
  const auto w = split::random_ipf_weight(9, 20, rng);
  for (std::uint32_t z = 0; z < 512; z += 37) {
    double a = 0, b = 0, c = 0;
    for (const auto& e : w.entries()) {
      const unsigned d = std::popcount(e.s ^ z);
      (d < 4 ? a : d > 5 ? b : c) += e.w;
    }
    const auto got = split::split(w, BitVector(9, z));
    EXPECT_NEAR(got.a, a, 1e-15);
    EXPECT_NEAR(got.b, b, 1e-15);
    EXPECT_NEAR(got.c, c, 1e-15);
  }
}

TEST(Split, ExpectedBandsUnderUniformZ) {
  const auto m = split::expected_band_masses(5);
  EXPECT_EQ(m.a, Rational(3, 16));
  EXPECT_EQ(m.b, Rational(3, 16));
  EXPECT_EQ(m.c, Rational(5, 8));
}

TEST(Joint, NumeratorFixtures) {
  EXPECT_EQ(split::joint_indicator_numerator(4, 0), 5u);
  EXPECT_EQ(split::joint_indicator_numerator(4, 4), 0u);
  EXPECT_DOUBLE_EQ(split::joint_indicator_prob(6, 2), 0.1875);
}

TEST(Joint, AgreesWithEnumerationOverZ) {
  for (unsigned n = 1; n <= 14; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      EXPECT_DOUBLE_EQ(split::joint_indicator_prob(n, k), oracle::joint(n, k)) << n << "," << k;
    }
  }
}

TEST(Joint, ExactAndLongDoublePathsMeet) {
  for (unsigned k = 0; k <= 64; k += 4) {
    const double exact = split::joint_indicator_prob(64, k);
    const double num = static_cast<double>(split::joint_indicator_numerator(64, k));
    EXPECT_NEAR(exact, num / std::ldexp(1.0, 64), 1e-15);
  }
  EXPECT_NEAR(split::joint_indicator_prob(65, 0), split::joint_indicator_prob(64, 0), 0.05);
}

TEST(Joint, NonIncreasingInDistance) {
  for (unsigned n : {7u, 50u, 64u, 65u, 120u, 200u}) {
    for (unsigned k = 1; k <= n; ++k) {
      EXPECT_LE(split::joint_indicator_prob(n, k), split::joint_indicator_prob(n, k - 1) + 1e-15);
    }
  }
}

TEST(Joint, OddDistanceTiesWithNextEven) {
  for (unsigned n = 2; n <= 64; ++n) {
    for (unsigned k = 1; k + 1 <= n; k += 2) {
      EXPECT_EQ(split::joint_indicator_numerator(n, k), split::joint_indicator_numerator(n, k + 1));
    }
  }
}

TEST(Fluctuation, GapAndWindows) {
  for (unsigned n : {36u, 72u, 144u}) {
    const auto f = split::fluctuation_check(n);
    EXPECT_GT(f.gap, 0.0);
    EXPECT_GE(f.gap, f.p_h1 * f.p_h2);
    EXPECT_GE(f.lower_bound, 0.0);
  }
  EXPECT_NEAR(split::fluctuation_check(36).gap, 0.2543, 1e-4);
  EXPECT_NEAR(split::fluctuation_check(36).p_h1 * split::fluctuation_check(36).p_h2, 0.00135, 1e-5);
  EXPECT_THROW(split::fluctuation_check(35), Error);
}

TEST(SmallWeight, UniformFixtureAndBruteMax) {
  EXPECT_DOUBLE_EQ(split::small_weight_sum(split::uniform_weight(6), BitVector(6, 0)), 7.0 / 64);
  auto rng = make_rng(12, 0);
  const auto w = split::random_antipodal_weight(10, 12, rng);
  double best = 0.0;
  std::uint32_t at = 0;
  for (std::uint32_t c = 0; c < 1024; ++c) {
    const double v = split::small_weight_sum(w, BitVector(10, c));
    if (v > best + 1e-15) best = v, at = c;
  }
  const auto m = split::small_weight_max(w);
  EXPECT_NEAR(m.value, best, 1e-12);
  EXPECT_NEAR(split::small_weight_sum(w, BitVector(10, m.center)), best, 1e-12);
  (void)at;
}

TEST(Variance, Fixtures) {
  EXPECT_NEAR(split::variance_exact(split::uniform_weight(8)), 0.0, 1e-15);
  const std::vector<split::WeightEntry> pairs{{0b000001, 1.0}, {0b000110, 1.0}};
  const auto w = split::antipodal_weight(6, pairs);
  EXPECT_NEAR(split::variance_exact(w), oracle::variance(6, entries_of(w)), 1e-15);
  EXPECT_NEAR(split::variance_exact(w), 0.0146484375, 1e-15);
}

TEST(Variance, AgreesWithEnumerationOverZ) {
  for (unsigned n = 6; n <= 11; ++n) {
    auto rng = make_rng(21, n);
    const auto w = split::random_ipf_weight(n, 6, rng);
    EXPECT_NEAR(split::variance_exact(w), oracle::variance(n, entries_of(w)), 1e-12) << n;
  }
  EXPECT_NEAR(split::variance_exact(weight4()), oracle::variance(4, entries_of(weight4())), 1e-15);
}

TEST(Explore, BandSumsMatchPairSums) {
  const auto w = weight4();
  double lhs = 0, rhs = 0;
  for (const auto& s : w.entries()) {
    for (const auto& t : w.entries()) {
      const unsigned d = std::popcount(s.s ^ t.s);
      if (d < 2) lhs += s.w * t.w;
      if (d > 2) rhs += s.w * t.w;
    }
  }
  const auto b = split::open_problem_explore(w);
  EXPECT_NEAR(b.lhs, lhs, 1e-15);
  EXPECT_NEAR(b.rhs, rhs, 1e-15);
  const std::vector<split::WeightEntry> pairs{{0b000001, 1.0}};
  const auto a = split::open_problem_explore(split::antipodal_weight(6, pairs));
  EXPECT_DOUBLE_EQ(a.lhs, 0.5);
  EXPECT_DOUBLE_EQ(a.rhs, 0.5);
}

TEST(Certify, UniformDimensionFour) {
  const auto r = split::certify_psi_upper_bound(split::uniform_weight(4), {1000, 1, 16, 1});
  EXPECT_DOUBLE_EQ(r.ratio, 1.2);
  ASSERT_TRUE(r.adhoc.has_value());
  EXPECT_EQ(r.adhoc->case_id, 2u);
  EXPECT_DOUBLE_EQ(r.adhoc->ratio, 14.0);
}

TEST(Certify, RandomSearchIsThreadIndependent) {
  auto rng = make_rng(5, 0);
  const auto w = split::random_ipf_weight(16, 64, rng);
  const auto a = split::random_certificate(w, 2000, 77, 1);
  const auto b = split::random_certificate(w, 2000, 77, 4);
  ASSERT_TRUE(a.best && b.best);
  EXPECT_EQ(a.best->z, b.best->z);
  EXPECT_EQ(a.best_trial, b.best_trial);
  const auto again = split::split(w, a.best->z);
  EXPECT_EQ(again.ratio, a.best->ratio);
}

TEST(Certify, AdhocCaseOneOnAdversarialWeight) {
  const std::vector<split::WeightEntry> pairs{{0b0011, 1.0}};
  const auto w = split::antipodal_weight(4, pairs);
  const auto c = split::adhoc_certificate(w);
  EXPECT_LE(c.ratio, std::ldexp(1.0, 5));
  EXPECT_NEAR(c.a + c.b + c.c, 1.0, 1e-12);
}

TEST(Bodies, MedianAndOrthantWeights) {
  const split::PointCloud cloud(1, {0.1, 0.2, 0.3, 0.4}, {1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(split::median_point(cloud)[0], 0.2);
  split::MembershipBody box{2, {0, 0}, {1, 1}, [](std::span<const double>) { return true; }};
  const auto sample = split::sample_body(box, 4000, 3);
  EXPECT_EQ(sample.size(), 4000u);
  const auto med = split::median_point(sample);
  const auto ow = split::orthant_weights(sample, med, 1e-12);
  ASSERT_TRUE(ow.weight);
  EXPECT_TRUE(ow.weight->is_balanced(1e-9));
  EXPECT_THROW(split::PointCloud(1, {0.5}, {0.0}), Error);
}

}  // namespace
