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
#include <span>
#include <vector>

#include "l0iso/rational.hpp"

namespace l0iso::grid {

// Dense storage bound: one flag per cell.
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 24;

// Uniform grid on [0,1]^n with breakpoints j/k on every axis.
struct GridSpec {
  unsigned n = 1;
  unsigned k = 1;

  // Throws kInvalidArgument for n == 0 or k == 0, kCapacity past kMaxCells.
  void validate() const;
  std::uint64_t cell_count() const;
  std::uint64_t stride(unsigned axis) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Union of half-open cells prod_i [a_i/k, (a_i+1)/k). Cells are addressed by
// multi-index (a_0, ..., a_{n-1}) or by the linear index sum_i a_i k^i.
class GridSet {
 public:
  explicit GridSet(GridSpec spec);

  static GridSet full(GridSpec spec);
  static GridSet from_cells(GridSpec spec,
                            const std::vector<std::vector<unsigned>>& cells);

  const GridSpec& spec() const noexcept { return spec_; }
  unsigned dimension() const noexcept { return spec_.n; }
  std::uint64_t cell_count() const noexcept { return flags_.size(); }
  std::uint64_t cardinality() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(std::uint64_t linear) const { return flags_[linear]; }
  bool contains(std::span<const unsigned> index) const;
  void insert(std::uint64_t linear);
  void insert(std::span<const unsigned> index);
  void erase(std::uint64_t linear);

  std::uint64_t linear_index(std::span<const unsigned> index) const;
  std::vector<unsigned> multi_index(std::uint64_t linear) const;
  unsigned coordinate(std::uint64_t linear, unsigned axis) const;

  // Members in increasing linear order.
  std::vector<std::vector<unsigned>> cells() const;
  std::vector<std::uint64_t> members() const;

  friend bool operator==(const GridSet& a, const GridSet& b) {
    return a.spec_ == b.spec_ && a.flags_ == b.flags_;
  }

 private:
  GridSpec spec_;
  std::vector<bool> flags_;
  std::uint64_t count_ = 0;
};

// Plus compresses each fiber toward 0, Minus toward 1.
enum class Direction { kPlus, kMinus };

Rational volume(const GridSet& a);
bool is_anchored(const GridSet& a);

// Cells outside A that agree with some cell of A in all but at most one
// coordinate.
GridSet l0_boundary(const GridSet& a);

// Every cross pair of cells differs in at least two coordinates. Throws
// kInvalidArgument when the grids differ (refine to a common grid first).
bool are_axis_disjoint(const GridSet& a, const GridSet& b);

// Shake along one axis (0-based): a fiber holding m cells becomes its first
// m cells (kPlus) or its last m cells (kMinus).
GridSet shake(const GridSet& a, unsigned axis, Direction dir);

// Shake along axes 0..n-1 in order, and that whole pass twice.
GridSet full_shake(const GridSet& a, Direction dir);

// Same point set on the grid with k * factor cells per axis.
GridSet refine(const GridSet& a, unsigned factor);

// Grid-aligned p-weighted Hamming ball H(threshold/k, radius): cells with at
// least n - radius coordinates below `threshold`.
GridSet hamming_ball(GridSpec spec, unsigned threshold, unsigned radius);

// Per-axis thresholds variant: at least n - radius coordinates i satisfy
// a_i < thresholds[i].
GridSet hamming_ball(GridSpec spec, std::span<const unsigned> thresholds,
                     unsigned radius);

// |boundary(S1)| / min(|S1|, residual) where the residual is everything
// outside S1 and its boundary. Infinite when S1 or the residual is empty.
Rational isoperimetric_ratio(const GridSet& s1);

// Calls fn(const GridSet&) once for every anchored (downward closed) set on
// the grid, including the empty and full sets. Enumerates monotone height
// functions over the first n-1 axes; throws kCapacity when (k+1)^(k^(n-1))
// exceeds 2^26 candidate assignments.
void for_each_anchored(GridSpec spec, const std::function<void(const GridSet&)>& fn);

}  // namespace l0iso::grid
