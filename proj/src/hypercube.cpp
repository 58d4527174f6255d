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

#include "l0iso/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "l0iso/error.hpp"

namespace l0iso::cube {

void check_dimension(unsigned n) {
  if (n == 0 || n > kMaxDimension) {
    fail(ErrorCode::kDimension,
         "dimension " + std::to_string(n) + " outside [1, " +
             std::to_string(kMaxDimension) + "]");
  }
}

std::uint32_t full_mask(unsigned n) {
  return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

BitVector::BitVector(unsigned n, std::uint32_t bits) : n_(n), bits_(bits) {
  check_dimension(n);
  if (bits & ~full_mask(n)) {
    fail(ErrorCode::kDomain, "bits set beyond dimension " + std::to_string(n));
  }
}

BitVector BitVector::ones(unsigned n) {
  check_dimension(n);
  return BitVector(n, full_mask(n));
}

BitVector BitVector::parse(std::string_view text) {
  if (text.empty() || text.size() > kMaxDimension) {
    fail(ErrorCode::kParse, "bitstring length must be in [1, 24]");
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint32_t{1} << i;
    } else if (text[i] != '0') {
      fail(ErrorCode::kParse, "bitstring contains '" + std::string(1, text[i]) + "'");
    }
  }
  return BitVector(static_cast<unsigned>(text.size()), bits);
}

BitVector BitVector::complement() const { return BitVector(n_, ~bits_ & full_mask(n_)); }

std::string BitVector::to_string() const {
  std::string out(n_, '0');
  for (unsigned i = 0; i < n_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

unsigned l0_norm(const BitVector& x) { return std::popcount(x.bits()); }

unsigned hamming_distance(const BitVector& s, const BitVector& t) {
  if (s.dimension() != t.dimension()) {
    fail(ErrorCode::kDimension, "hamming distance between lengths " +
                                    std::to_string(s.dimension()) + " and " +
                                    std::to_string(t.dimension()));
  }
  return std::popcount(s.bits() ^ t.bits());
}

VertexSet::VertexSet(unsigned n) : n_(n) {
  check_dimension(n);
  words_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
}

VertexSet VertexSet::full(unsigned n) {
  return where(n, [](std::uint32_t) { return true; });
}

bool VertexSet::contains(const BitVector& v) const {
  if (v.dimension() != n_) fail(ErrorCode::kDimension, "vertex length mismatch");
  return contains(v.bits());
}

void VertexSet::insert(std::uint32_t v) {
  std::uint64_t& word = words_[v >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  if (!(word & bit)) {
    word |= bit;
    ++count_;
  }
}

void VertexSet::insert(const BitVector& v) {
  if (v.dimension() != n_) fail(ErrorCode::kDimension, "vertex length mismatch");
  insert(v.bits());
}

std::vector<std::uint32_t> VertexSet::members() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for_each([&](std::uint32_t v) { out.push_back(v); });
  return out;
}

bool are_axis_disjoint(const VertexSet& a, const VertexSet& b) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::kDimension, "vertex sets of different dimension");
  }
  bool disjoint = true;
  a.for_each([&](std::uint32_t v) {
    if (!disjoint) return;
    if (b.contains(v)) {
      disjoint = false;
      return;
    }
    for (unsigned i = 0; i < a.dimension(); ++i) {
      if (b.contains(v ^ (std::uint32_t{1} << i))) {
        disjoint = false;
        return;
      }
    }
  });
  return disjoint;
}

VertexSet vertex_boundary(const VertexSet& a) {
  VertexSet out(a.dimension());
  a.for_each([&](std::uint32_t v) {
    for (unsigned i = 0; i < a.dimension(); ++i) {
      const std::uint32_t u = v ^ (std::uint32_t{1} << i);
      if (!a.contains(u)) out.insert(u);
    }
  });
  return out;
}

namespace {

unsigned floor_half(unsigned n) { return n / 2; }
unsigned ceil_half(unsigned n) { return (n + 1) / 2; }

std::uint64_t choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

Rational HalvingConstruction::ratio() const {
  return Rational(s3.size(), std::min(s1.size(), s2.size()));
}

HalvingConstruction halving_construction(unsigned n) {
  if (n < 2) {
    fail(ErrorCode::kDegenerate, "halving construction needs n >= 2 (S1 is empty)");
  }
  check_dimension(n);
  const unsigned lo = floor_half(n);
  const unsigned hi = ceil_half(n);
  const auto weight = [](std::uint32_t v) { return static_cast<unsigned>(std::popcount(v)); };
  return HalvingConstruction{
      VertexSet::where(n, [&](std::uint32_t v) { return weight(v) > hi; }),
      VertexSet::where(n, [&](std::uint32_t v) { return weight(v) < lo; }),
      VertexSet::where(n, [&](std::uint32_t v) { return weight(v) >= lo && weight(v) <= hi; }),
  };
}

Rational HalvingCounts::ratio() const { return Rational(s3, std::min(s1, s2)); }

HalvingCounts halving_counts(unsigned n) {
  if (n < 2) {
    fail(ErrorCode::kDegenerate, "halving construction needs n >= 2 (S1 is empty)");
  }
  if (n > 62) fail(ErrorCode::kCapacity, "halving counts limited to n <= 62");
  HalvingCounts out;
  for (unsigned k = 0; k <= n; ++k) {
    const std::uint64_t c = choose(n, k);
    if (k > ceil_half(n)) {
      out.s1 += c;
    } else if (k < floor_half(n)) {
      out.s2 += c;
    } else {
      out.s3 += c;
    }
  }
  return out;
}

grid::GridSet cell_image(const VertexSet& a) {
  grid::GridSet out(grid::GridSpec{a.dimension(), 2});
  // With k = 2 the linear cell index sum_i a_i 2^i is the vertex code.
  a.for_each([&](std::uint32_t v) { out.insert(v); });
  return out;
}

namespace {

struct PsiBest {
  Rational value = Rational::infinity();
  std::uint32_t mask = 0;
  std::uint32_t boundary = 0;
  std::uint32_t residual = 0;
};

// Scans masks in [begin, end) in increasing order; strict improvement keeps
// the smallest mask among ties.
PsiBest scan_masks(const std::vector<std::uint32_t>& neighborhood, unsigned cells,
                   std::uint64_t begin, std::uint64_t end) {
  PsiBest best;
  for (std::uint64_t m = begin; m < end; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    std::uint32_t reach = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      reach |= neighborhood[std::countr_zero(rest)];
    }
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const auto boundary = static_cast<unsigned>(std::popcount(reach & ~mask));
    const unsigned residual = cells - size - boundary;
    if (residual == 0) continue;
    // boundary / min(size, residual) < best.value, compared exactly
    const std::uint64_t denom = std::min(size, residual);
    if (best.value.is_infinite() ||
        static_cast<std::uint64_t>(boundary) * best.value.den() <
            best.value.num() * denom) {
      best.value = Rational(boundary, denom);
      best.mask = mask;
      best.boundary = boundary;
      best.residual = residual;
    }
  }
  return best;
}

}  // namespace

PsiGridResult psi_grid_exact(unsigned n, unsigned k, unsigned threads) {
  grid::GridSpec spec{n, k};
  if (n == 0 || k == 0) fail(ErrorCode::kInvalidArgument, "need n >= 1 and k >= 1");
  std::uint64_t cells64 = 1;
  for (unsigned i = 0; i < n; ++i) {
    cells64 *= k;
    if (cells64 > kMaxExactCells) {
      fail(ErrorCode::kCapacity, "psi_grid_exact: k^n exceeds " +
                                     std::to_string(kMaxExactCells) + " cells");
    }
  }
  const auto cells = static_cast<unsigned>(cells64);

  // Closed clique-product neighborhood of every cell.
  grid::GridSet probe(spec);
  std::vector<std::uint32_t> neighborhood(cells, 0);
  for (unsigned c = 0; c < cells; ++c) {
    for (unsigned axis = 0; axis < n; ++axis) {
      const std::uint64_t stride = spec.stride(axis);
      const std::uint64_t base = c - probe.coordinate(c, axis) * stride;
      for (unsigned t = 0; t < k; ++t) {
        neighborhood[c] |= std::uint32_t{1} << (base + t * stride);
      }
    }
    neighborhood[c] |= std::uint32_t{1} << c;
  }

  const std::uint64_t total = std::uint64_t{1} << cells;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (total < (1u << 16)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::vector<PsiBest> partial(threads);
  {
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (total - 1 + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = 1 + w * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      workers.emplace_back([&, w, begin, end] {
        if (begin < end) partial[w] = scan_masks(neighborhood, cells, begin, end);
      });
    }
  }

  // Chunks are in increasing mask order, so the first strict minimum wins.
  PsiBest best;
  for (const auto& p : partial) {
    if (p.value < best.value) best = p;
  }

  PsiGridResult result{best.value, grid::GridSet(spec), best.boundary, best.residual,
                       total - 1};
  if (!best.value.is_infinite()) {
    for (unsigned c = 0; c < cells; ++c) {
      if (best.mask >> c & 1u) result.witness.insert(c);
    }
  }
  return result;
}

}  // namespace l0iso::cube
