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

#include <random>

#include "l0iso/error.hpp"
#include "l0iso/gridset.hpp"
#include "oracle.hpp"

namespace {

using l0iso::Rational;
using namespace l0iso::grid;

GridSet random_set(GridSpec spec, std::mt19937_64& rng, unsigned percent) {
  GridSet g(spec);
  for (std::uint64_t c = 0; c < spec.cell_count(); ++c) {
    if (rng() % 100 < percent) g.insert(c);
  }
  return g;
}

std::vector<bool> flags(const GridSet& g) {
  std::vector<bool> f(g.cell_count());
  for (std::uint64_t c : g.members()) f[c] = true;
  return f;
}

TEST(GridSet, LinearIndexRoundTrip) {
  const GridSpec spec{3, 4};
  GridSet g(spec);
  const std::vector<unsigned> idx{1, 2, 3};
  EXPECT_EQ(g.linear_index(idx), 1u + 2u * 4 + 3u * 16);
  EXPECT_EQ(g.multi_index(g.linear_index(idx)), idx);
  g.insert(idx);
  EXPECT_TRUE(g.contains(idx));
  EXPECT_EQ(g.cardinality(), 1u);
}

TEST(GridSet, VolumeIsCellFraction) {
  GridSet g(GridSpec{2, 3});
  g.insert(0);
  g.insert(4);
  EXPECT_EQ(volume(g), Rational(2, 9));
  EXPECT_EQ(volume(GridSet::full(GridSpec{3, 2})), Rational(1, 1));
}

TEST(Boundary, MatchesNaiveDefinition) {
  std::mt19937_64 rng(11);
  for (unsigned round = 0; round < 60; ++round) {
    const GridSpec spec{1u + round % 3, 2u + round % 4};
    const GridSet g = random_set(spec, rng, 20);
    const std::vector<bool> want = oracle::grid_boundary(spec.n, spec.k, flags(g));
    EXPECT_EQ(flags(l0_boundary(g)), want);
  }
}

TEST(Anchored, EnumerationCounts) {
  const auto count = [](GridSpec spec) {
    std::uint64_t c = 0;
    for_each_anchored(spec, [&](const GridSet& g) {
      EXPECT_TRUE(is_anchored(g));
      ++c;
    });
    return c;
  };
  EXPECT_EQ(count({2, 2}), 6u);
  EXPECT_EQ(count({2, 3}), 20u);
  EXPECT_EQ(count({3, 2}), 20u);
  EXPECT_EQ(count({3, 3}), 980u);
}

TEST(Anchored, DownwardClosure) {
  GridSet g(GridSpec{2, 3});
  g.insert(std::vector<unsigned>{1, 0});
  EXPECT_FALSE(is_anchored(g));
  g.insert(std::vector<unsigned>{0, 0});
  EXPECT_TRUE(is_anchored(g));
}

TEST(Shake, SingleAxisCompressesFibres) {
  GridSet g(GridSpec{2, 4});
  g.insert(std::vector<unsigned>{3, 1});
  g.insert(std::vector<unsigned>{1, 1});
  const GridSet plus = shake(g, 0, Direction::kPlus);
  EXPECT_TRUE(plus.contains(std::vector<unsigned>{0, 1}));
  EXPECT_TRUE(plus.contains(std::vector<unsigned>{1, 1}));
  const GridSet minus = shake(g, 0, Direction::kMinus);
  EXPECT_TRUE(minus.contains(std::vector<unsigned>{2, 1}));
  EXPECT_TRUE(minus.contains(std::vector<unsigned>{3, 1}));
}

TEST(Shake, InvariantsOnRandomPairs) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const GridSpec spec{1 + static_cast<unsigned>(rng() % 4), 2 + static_cast<unsigned>(rng() % 4)};
    const GridSet s1 = random_set(spec, rng, 15 + rng() % 30);
    GridSet s2(spec);
    const GridSet ring = l0_boundary(s1);
    for (std::uint64_t c = 0; c < spec.cell_count(); ++c) {
      if (!s1.contains(c) && !ring.contains(c) && rng() % 2) s2.insert(c);
    }
    ASSERT_TRUE(are_axis_disjoint(s1, s2));
    const GridSet t1 = full_shake(s1, Direction::kPlus);
    const GridSet t2 = full_shake(s2, Direction::kMinus);
    EXPECT_EQ(volume(t1), volume(s1));
    EXPECT_TRUE(are_axis_disjoint(t1, t2));
    EXPECT_LE(l0_boundary(t1).cardinality(), l0_boundary(s1).cardinality());
    EXPECT_TRUE(is_anchored(full_shake(t1, Direction::kPlus)));
  }
}

TEST(Refine, PreservesVolumeAndScalesBoundary) {
  GridSet g(GridSpec{2, 2});
  g.insert(0);
  const GridSet r = refine(g, 3);
  EXPECT_EQ(r.spec().k, 6u);
  EXPECT_EQ(volume(r), volume(g));
  EXPECT_EQ(volume(l0_boundary(r)), Rational(1, 2));
  EXPECT_EQ(volume(l0_boundary(g)), Rational(1, 2));
}

TEST(HammingBall, UniformThresholdCardinalities) {
  const GridSpec spec{2, 3};
  EXPECT_EQ(hamming_ball(spec, 1, 0).cardinality(), 1u);
  EXPECT_EQ(hamming_ball(spec, 2, 0).cardinality(), 4u);
  EXPECT_EQ(hamming_ball(spec, 1, 1).cardinality(), 5u);
  EXPECT_EQ(hamming_ball(spec, 2, 1).cardinality(), 8u);
  EXPECT_EQ(hamming_ball(spec, 3, 0).cardinality(), 9u);
  EXPECT_TRUE(is_anchored(hamming_ball(GridSpec{3, 4}, 2, 1)));
}

TEST(HammingBall, PerAxisThresholds) {
  const std::vector<unsigned> t{1, 2};
  const GridSet g = hamming_ball(GridSpec{2, 3}, t, 0);
  EXPECT_EQ(g.cells(), (std::vector<std::vector<unsigned>>{{0, 0}, {0, 1}}));
}

TEST(Ratio, InfiniteWhenResidualEmpty) {
  EXPECT_TRUE(isoperimetric_ratio(GridSet::full(GridSpec{2, 2})).is_infinite());
  EXPECT_TRUE(isoperimetric_ratio(GridSet(GridSpec{2, 2})).is_infinite());
  GridSet g(GridSpec{2, 3});
  g.insert(0);
  EXPECT_EQ(isoperimetric_ratio(g), Rational(4, 1));
}

TEST(GridSpec, Validation) {
  EXPECT_THROW(GridSet(GridSpec{0, 2}), l0iso::Error);
  EXPECT_THROW(GridSet(GridSpec{25, 2}), l0iso::Error);
  EXPECT_THROW(are_axis_disjoint(GridSet(GridSpec{2, 2}), GridSet(GridSpec{2, 3})), l0iso::Error);
}

}  // namespace
