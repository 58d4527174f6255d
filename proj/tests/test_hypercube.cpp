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
#include <random>

#include "l0iso/error.hpp"
#include "l0iso/gridset.hpp"
#include "l0iso/hypercube.hpp"
#include "oracle.hpp"

namespace {

using l0iso::ErrorCode;
using l0iso::Rational;
using namespace l0iso::cube;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const l0iso::Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

TEST(BitVector, ParseUsesLeftmostAsFirstCoordinate) {
  const BitVector v = BitVector::parse("1000");
  EXPECT_EQ(v.dimension(), 4u);
  EXPECT_TRUE(v[0]);
  EXPECT_FALSE(v[3]);
  EXPECT_EQ(v.to_string(), "1000");
  EXPECT_EQ(v.complement().to_string(), "0111");
}

TEST(BitVector, RejectsBadText) {
  EXPECT_EQ(code_of([] { BitVector::parse("10a1"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { BitVector::parse(""); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { BitVector::parse(std::string(25, '0')); }), ErrorCode::kParse);
}

TEST(Norms, L0AndHamming) {
  EXPECT_EQ(l0_norm(BitVector::parse("10110")), 3u);
  EXPECT_EQ(hamming_distance(BitVector::parse("1100"), BitVector::parse("1010")), 2u);
  EXPECT_EQ(code_of([] { hamming_distance(BitVector::parse("10"), BitVector::parse("101")); }),
            ErrorCode::kDimension);
}

TEST(VertexBoundary, MatchesNaiveNeighbourhood) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const unsigned n = 2 + round % 6;
    VertexSet a(n);
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      if (rng() % 4 == 0) a.insert(v);
    }
    const VertexSet b = vertex_boundary(a);
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      bool expect = false;
      if (!a.contains(v)) {
        for (unsigned i = 0; i < n; ++i) expect = expect || a.contains(v ^ (1u << i));
      }
      EXPECT_EQ(b.contains(v), expect);
    }
  }
}

TEST(AxisDisjoint, DistanceAtLeastTwo) {
  VertexSet a(3), b(3);
  a.insert(BitVector::parse("000"));
  b.insert(BitVector::parse("011"));
  EXPECT_TRUE(are_axis_disjoint(a, b));
  b.insert(BitVector::parse("100"));
  EXPECT_FALSE(are_axis_disjoint(a, b));
}

TEST(Halving, DimensionFourCounts) {
  const HalvingConstruction h = halving_construction(4);
  EXPECT_EQ(h.s1.size(), 5u);
  EXPECT_EQ(h.s2.size(), 5u);
  EXPECT_EQ(h.s3.size(), 6u);
  EXPECT_EQ(h.ratio(), Rational(6, 5));
  EXPECT_TRUE(are_axis_disjoint(h.s1, h.s2));
}

TEST(Halving, CountsAgreeWithBinomialSums) {
  std::vector<std::uint64_t> row{1};
  for (unsigned n = 1; n <= 62; ++n) {
    std::vector<std::uint64_t> next(n + 1, 1);
    for (unsigned j = 1; j < n; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
    if (n < 2) continue;
    std::uint64_t s1 = 0, s2 = 0;
    for (unsigned w = 0; w <= n; ++w) {
      if (w > (n + 1) / 2) s1 += row[w];
      if (w < n / 2) s2 += row[w];
    }
    const HalvingCounts c = halving_counts(n);
    EXPECT_EQ(c.s1, s1) << n;
    EXPECT_EQ(c.s2, s2) << n;
    EXPECT_EQ(c.s1 + c.s2 + c.s3, std::uint64_t{1} << n) << n;
  }
}

TEST(Halving, SetsMatchCountsAndPartitionCube) {
  for (unsigned n = 2; n <= 16; ++n) {
    const HalvingConstruction h = halving_construction(n);
    const HalvingCounts c = halving_counts(n);
    EXPECT_EQ(h.s1.size(), c.s1);
    EXPECT_EQ(h.s2.size(), c.s2);
    EXPECT_EQ(h.s3.size(), c.s3);
    EXPECT_TRUE(are_axis_disjoint(h.s1, h.s2)) << n;
    for (std::uint32_t v = 0; v < (1u << n); ++v) {
      EXPECT_EQ(h.s1.contains(v) + h.s2.contains(v) + h.s3.contains(v), 1);
    }
  }
}

// Frozen values of |S3| / min(|S1|, |S2|) * sqrt(n).
TEST(Halving, ScaledRatioFixtures) {
  const auto scaled = [](unsigned n) {
    return halving_counts(n).ratio().to_double() * std::sqrt(static_cast<double>(n));
  };
  EXPECT_NEAR(scaled(3), 10.392304845413264, 1e-12);
  EXPECT_NEAR(scaled(5), 7.453559924999299, 1e-12);
  EXPECT_NEAR(scaled(24), 1.8827, 1e-4);
  EXPECT_EQ(code_of([] { halving_counts(1); }), ErrorCode::kDegenerate);
}

TEST(PsiGrid, FrozenFixtures) {
  EXPECT_EQ(psi_grid_exact(2, 2).value, Rational(2, 1));
  EXPECT_EQ(psi_grid_exact(3, 2).value, Rational(2, 1));
  EXPECT_EQ(psi_grid_exact(2, 4).value, Rational(2, 1));
  EXPECT_EQ(psi_grid_exact(4, 2).value, Rational(6, 5));
  EXPECT_TRUE(psi_grid_exact(1, 2).value.is_infinite());

  const PsiGridResult r = psi_grid_exact(2, 3);
  EXPECT_EQ(r.value, Rational(5, 2));
  EXPECT_EQ(r.boundary, 5u);
  EXPECT_EQ(r.residual, 2u);
  EXPECT_EQ(r.subsets_visited, 511u);
  EXPECT_EQ(r.witness.cells(), (std::vector<std::vector<unsigned>>{{0, 0}, {1, 0}}));
}

TEST(PsiGrid, AgreesWithNaiveEnumeration) {
  for (auto [n, k] : {std::pair{1u, 3u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {1u, 5u}}) {
    const auto [num, den] = oracle::psi(n, k);
    const Rational got = psi_grid_exact(n, k).value;
    if (den == 0) {
      EXPECT_TRUE(got.is_infinite());
    } else {
      EXPECT_EQ(got, Rational(num, den)) << n << "," << k;
    }
  }
}

TEST(PsiGrid, WitnessAchievesValue) {
  const PsiGridResult r = psi_grid_exact(3, 2);
  EXPECT_EQ(l0iso::grid::isoperimetric_ratio(r.witness), r.value);
}

TEST(PsiGrid, ThreadCountDoesNotChangeResult) {
  const PsiGridResult a = psi_grid_exact(2, 4, 1);
  const PsiGridResult b = psi_grid_exact(2, 4, 5);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(PsiGrid, RefinementDoesNotIncrease) {
  EXPECT_LE(psi_grid_exact(2, 4).value, psi_grid_exact(2, 2).value);
  EXPECT_GT(psi_grid_exact(2, 3).value, psi_grid_exact(2, 2).value);
}

TEST(PsiGrid, CapacityLimit) {
  EXPECT_EQ(code_of([] { psi_grid_exact(5, 2); }), ErrorCode::kCapacity);
  EXPECT_EQ(code_of([] { psi_grid_exact(2, 5); }), ErrorCode::kCapacity);
  EXPECT_EQ(code_of([] { psi_grid_exact(0, 2); }), ErrorCode::kInvalidArgument);
}

TEST(CellImage, HalvingImageOnTwoCellGrid) {
  const HalvingConstruction h = halving_construction(4);
  const l0iso::grid::GridSet g = cell_image(h.s1);
  EXPECT_EQ(g.spec().k, 2u);
  EXPECT_EQ(g.cardinality(), 5u);
  EXPECT_TRUE(g.contains(std::vector<unsigned>{1, 1, 1, 1}));
}

}  // namespace
