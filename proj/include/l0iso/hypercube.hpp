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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "l0iso/gridset.hpp"
#include "l0iso/rational.hpp"

namespace l0iso::cube {

inline constexpr unsigned kMaxDimension = 24;

// Vertex of {0,1}^n. Coordinate i (0-based) lives in bit i; the text form
// is big-endian in coordinates, i.e. coordinate 1 is the leftmost character.
class BitVector {
 public:
  BitVector(unsigned n, std::uint32_t bits);

  static BitVector zeros(unsigned n) { return BitVector(n, 0); }
  static BitVector ones(unsigned n);
  static BitVector parse(std::string_view text);

  unsigned dimension() const noexcept { return n_; }
  std::uint32_t bits() const noexcept { return bits_; }
  bool operator[](unsigned i) const noexcept { return (bits_ >> i) & 1u; }

  BitVector complement() const;
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector&, const BitVector&) = default;

 private:
  unsigned n_;
  std::uint32_t bits_;
};

void check_dimension(unsigned n);
std::uint32_t full_mask(unsigned n);

unsigned l0_norm(const BitVector& x);

// Throws kDimension on length mismatch.
unsigned hamming_distance(const BitVector& s, const BitVector& t);

// Subset of {0,1}^n as a dense bitset over the 2^n vertex codes.
class VertexSet {
 public:
  explicit VertexSet(unsigned n);

  static VertexSet full(unsigned n);

  template <class Pred>
  static VertexSet where(unsigned n, Pred&& pred) {
    VertexSet out(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < total; ++v) {
      if (pred(static_cast<std::uint32_t>(v))) out.insert(static_cast<std::uint32_t>(v));
    }
    return out;
  }

  unsigned dimension() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(std::uint32_t v) const noexcept {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  bool contains(const BitVector& v) const;
  void insert(std::uint32_t v);
  void insert(const BitVector& v);

  std::vector<std::uint32_t> members() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        fn(static_cast<std::uint32_t>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  unsigned n_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

bool are_axis_disjoint(const VertexSet& a, const VertexSet& b);

// Vertices outside A at Hamming distance 1 from A.
VertexSet vertex_boundary(const VertexSet& a);

struct HalvingConstruction {
  VertexSet s1;  // weight > ceil(n/2)
  VertexSet s2;  // weight < floor(n/2)
  VertexSet s3;  // everything else

  Rational ratio() const;
};

// Throws kDegenerate for n < 2 (S1 is empty there).
HalvingConstruction halving_construction(unsigned n);

// Counts only; valid for any n in [2, 62].
struct HalvingCounts {
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;

  Rational ratio() const;
};
HalvingCounts halving_counts(unsigned n);

// The cell map x -> prod_i I_{x_i} with I_0 = [0,1/2), I_1 = [1/2,1]:
// vertex code v becomes the k = 2 cell whose multi-index equals its bits.
grid::GridSet cell_image(const VertexSet& a);

// Cap on k^n for psi_grid_exact: all 2^(k^n) cell subsets are visited.
inline constexpr unsigned kMaxExactCells = 24;

struct PsiGridResult {
  Rational value;           // infinite when no feasible S1 exists
  grid::GridSet witness;    // empty when infeasible
  std::uint64_t boundary = 0;
  std::uint64_t residual = 0;
  std::uint64_t subsets_visited = 0;
};

// Minimum of isoperimetric_ratio over nonempty cell subsets of the k^n
// lattice. Ties go to the smallest subset mask (cell with linear index c is
// bit c). Throws kCapacity when k^n > kMaxExactCells.
PsiGridResult psi_grid_exact(unsigned n, unsigned k, unsigned threads = 0);

}  // namespace l0iso::cube
