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

#include "l0iso/gridset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "l0iso/error.hpp"

namespace l0iso::grid {

void GridSpec::validate() const {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "grid dimension must be >= 1");
  if (k == 0) fail(ErrorCode::kInvalidArgument, "grid needs >= 1 cell per axis");
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < n; ++i) {
    cells *= k;
    if (cells > kMaxCells) {
      fail(ErrorCode::kCapacity, "grid with k=" + std::to_string(k) +
                                     ", n=" + std::to_string(n) +
                                     " exceeds the dense cell limit");
    }
  }
}

std::uint64_t GridSpec::cell_count() const {
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < n; ++i) cells *= k;
  return cells;
}

std::uint64_t GridSpec::stride(unsigned axis) const {
  std::uint64_t s = 1;
  for (unsigned i = 0; i < axis; ++i) s *= k;
  return s;
}

GridSet::GridSet(GridSpec spec) : spec_(spec) {
  spec_.validate();
  flags_.assign(spec_.cell_count(), false);
}

GridSet GridSet::full(GridSpec spec) {
  GridSet out(spec);
  out.flags_.assign(out.flags_.size(), true);
  out.count_ = out.flags_.size();
  return out;
}

GridSet GridSet::from_cells(GridSpec spec,
                            const std::vector<std::vector<unsigned>>& cells) {
  GridSet out(spec);
  for (const auto& c : cells) out.insert(c);
  return out;
}

std::uint64_t GridSet::linear_index(std::span<const unsigned> index) const {
  if (index.size() != spec_.n) {
    fail(ErrorCode::kDimension, "cell index has " + std::to_string(index.size()) +
                                    " coordinates, grid has " +
                                    std::to_string(spec_.n));
  }
  std::uint64_t linear = 0;
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < spec_.n; ++i) {
    if (index[i] >= spec_.k) {
      fail(ErrorCode::kDomain, "cell coordinate " + std::to_string(index[i]) +
                                   " out of range for k=" + std::to_string(spec_.k));
    }
    linear += index[i] * stride;
    stride *= spec_.k;
  }
  return linear;
}

std::vector<unsigned> GridSet::multi_index(std::uint64_t linear) const {
  std::vector<unsigned> index(spec_.n);
  for (unsigned i = 0; i < spec_.n; ++i) {
    index[i] = static_cast<unsigned>(linear % spec_.k);
    linear /= spec_.k;
  }
  return index;
}

unsigned GridSet::coordinate(std::uint64_t linear, unsigned axis) const {
  return static_cast<unsigned>((linear / spec_.stride(axis)) % spec_.k);
}

bool GridSet::contains(std::span<const unsigned> index) const {
  return flags_[linear_index(index)];
}

void GridSet::insert(std::uint64_t linear) {
  if (!flags_[linear]) {
    flags_[linear] = true;
    ++count_;
  }
}

void GridSet::insert(std::span<const unsigned> index) {
  insert(linear_index(index));
}

void GridSet::erase(std::uint64_t linear) {
  if (flags_[linear]) {
    flags_[linear] = false;
    --count_;
  }
}

std::vector<std::uint64_t> GridSet::members() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_);
  for (std::uint64_t c = 0; c < flags_.size(); ++c) {
    if (flags_[c]) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<unsigned>> GridSet::cells() const {
  std::vector<std::vector<unsigned>> out;
  out.reserve(count_);
  for (std::uint64_t c : members()) out.push_back(multi_index(c));
  return out;
}

Rational volume(const GridSet& a) {
  return Rational(a.cardinality(), a.cell_count());
}

bool is_anchored(const GridSet& a) {
  const auto& spec = a.spec();
  for (unsigned axis = 0; axis < spec.n; ++axis) {
    const std::uint64_t stride = spec.stride(axis);
    for (std::uint64_t c = 0; c < a.cell_count(); ++c) {
      if (a.contains(c) && (c / stride) % spec.k != 0 && !a.contains(c - stride)) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Visits the first cell of every fiber along `axis`.
template <class Fn>
void for_each_fiber(const GridSpec& spec, unsigned axis, Fn&& fn) {
  const std::uint64_t stride = spec.stride(axis);
  const std::uint64_t block = stride * spec.k;
  const std::uint64_t total = spec.cell_count();
  for (std::uint64_t outer = 0; outer < total; outer += block) {
    for (std::uint64_t inner = 0; inner < stride; ++inner) {
      fn(outer + inner, stride);
    }
  }
}

void check_same_grid(const GridSet& a, const GridSet& b) {
  if (!(a.spec() == b.spec())) {
    fail(ErrorCode::kInvalidArgument,
         "grid sets live on different grids; refine to a common grid first");
  }
}

}  // namespace

GridSet l0_boundary(const GridSet& a) {
  const auto& spec = a.spec();
  std::vector<bool> covered(a.cell_count(), false);
  for (unsigned axis = 0; axis < spec.n; ++axis) {
    for_each_fiber(spec, axis, [&](std::uint64_t base, std::uint64_t stride) {
      bool occupied = false;
      for (unsigned t = 0; t < spec.k && !occupied; ++t) {
        occupied = a.contains(base + t * stride);
      }
      if (!occupied) return;
      for (unsigned t = 0; t < spec.k; ++t) covered[base + t * stride] = true;
    });
  }
  GridSet out(spec);
  for (std::uint64_t c = 0; c < a.cell_count(); ++c) {
    if (covered[c] && !a.contains(c)) out.insert(c);
  }
  return out;
}

bool are_axis_disjoint(const GridSet& a, const GridSet& b) {
  check_same_grid(a, b);
  if (a.empty() || b.empty()) return true;
  // B must avoid A and the boundary of A.
  const GridSet reach = l0_boundary(a);
  for (std::uint64_t c = 0; c < b.cell_count(); ++c) {
    if (b.contains(c) && (a.contains(c) || reach.contains(c))) return false;
  }
  return true;
}

GridSet shake(const GridSet& a, unsigned axis, Direction dir) {
  const auto& spec = a.spec();
  if (axis >= spec.n) {
    fail(ErrorCode::kDomain, "shake axis " + std::to_string(axis) +
                                 " out of range for n=" + std::to_string(spec.n));
  }
  GridSet out(spec);
  for_each_fiber(spec, axis, [&](std::uint64_t base, std::uint64_t stride) {
    unsigned m = 0;
    for (unsigned t = 0; t < spec.k; ++t) m += a.contains(base + t * stride) ? 1 : 0;
    const unsigned first = dir == Direction::kPlus ? 0 : spec.k - m;
    for (unsigned t = first; t < first + m; ++t) out.insert(base + t * stride);
  });
  return out;
}

GridSet full_shake(const GridSet& a, Direction dir) {
  GridSet out = a;
  for (int pass = 0; pass < 2; ++pass) {
    for (unsigned axis = 0; axis < a.dimension(); ++axis) {
      out = shake(out, axis, dir);
    }
  }
  return out;
}

GridSet refine(const GridSet& a, unsigned factor) {
  if (factor == 0) fail(ErrorCode::kInvalidArgument, "refinement factor must be >= 1");
  const auto& spec = a.spec();
  const std::uint64_t fine_k = std::uint64_t{spec.k} * factor;
  if (fine_k > kMaxCells) fail(ErrorCode::kCapacity, "refined grid too large");
  GridSpec fine{spec.n, static_cast<unsigned>(fine_k)};
  GridSet out(fine);  // validates the cell count
  std::vector<unsigned> fine_index(spec.n);
  for (std::uint64_t c = 0; c < out.cell_count(); ++c) {
    std::uint64_t rest = c;
    std::uint64_t coarse = 0;
    std::uint64_t stride = 1;
    for (unsigned i = 0; i < spec.n; ++i) {
      const std::uint64_t fi = rest % fine_k;
      rest /= fine_k;
      coarse += (fi / factor) * stride;
      stride *= spec.k;
    }
    if (a.contains(coarse)) out.insert(c);
  }
  return out;
}

GridSet hamming_ball(GridSpec spec, std::span<const unsigned> thresholds,
                     unsigned radius) {
  GridSet out(spec);
  if (thresholds.size() != spec.n) {
    fail(ErrorCode::kDimension, "need one threshold per axis");
  }
  for (std::uint64_t c = 0; c < out.cell_count(); ++c) {
    std::uint64_t rest = c;
    unsigned low = 0;
    for (unsigned i = 0; i < spec.n; ++i) {
      if (rest % spec.k < thresholds[i]) ++low;
      rest /= spec.k;
    }
    if (low + radius >= spec.n) out.insert(c);
  }
  return out;
}

GridSet hamming_ball(GridSpec spec, unsigned threshold, unsigned radius) {
  std::vector<unsigned> thresholds(spec.n, threshold);
  return hamming_ball(spec, thresholds, radius);
}

Rational isoperimetric_ratio(const GridSet& s1) {
  if (s1.empty()) return Rational::infinity();
  const std::uint64_t boundary = l0_boundary(s1).cardinality();
  const std::uint64_t residual = s1.cell_count() - s1.cardinality() - boundary;
  if (residual == 0) return Rational::infinity();
  return Rational(boundary, std::min(s1.cardinality(), residual));
}

void for_each_anchored(GridSpec spec, const std::function<void(const GridSet&)>& fn) {
  spec.validate();
  // An anchored set is determined by the height of its column along the last
  // axis over every cell of the first n-1 axes; heights are non-increasing
  // in the product order.
  const GridSpec base{spec.n > 1 ? spec.n - 1 : 1, spec.k};
  const std::uint64_t columns = spec.n > 1 ? base.cell_count() : 1;
  const double candidates = static_cast<double>(columns) * std::log2(spec.k + 1.0);
  if (candidates > 26.0) {
    fail(ErrorCode::kCapacity, "too many anchored-set candidates to enumerate");
  }
  std::vector<unsigned> height(columns, 0);
  const std::uint64_t top_stride = spec.stride(spec.n - 1);

  const auto emit = [&]() {
    GridSet out(spec);
    for (std::uint64_t col = 0; col < columns; ++col) {
      for (unsigned t = 0; t < height[col]; ++t) out.insert(col + t * top_stride);
    }
    fn(out);
  };

  const auto cap = [&](std::uint64_t col) {
    unsigned limit = spec.k;
    if (spec.n == 1) return limit;
    std::uint64_t stride = 1;
    for (unsigned i = 0; i + 1 < spec.n; ++i) {
      if ((col / stride) % spec.k != 0) limit = std::min(limit, height[col - stride]);
      stride *= spec.k;
    }
    return limit;
  };

  std::function<void(std::uint64_t)> rec = [&](std::uint64_t col) {
    if (col == columns) {
      emit();
      return;
    }
    const unsigned limit = cap(col);
    for (unsigned h = 0; h <= limit; ++h) {
      height[col] = h;
      rec(col + 1);
    }
  };
  rec(0);
}

}  // namespace l0iso::grid
