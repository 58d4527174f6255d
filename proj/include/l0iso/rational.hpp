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
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "l0iso/error.hpp"

namespace l0iso {

// Nonnegative exact fraction over 64-bit integers. Comparisons go through
// 128-bit cross products so they never overflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den == 0) fail(ErrorCode::kDomain, "rational with zero denominator");
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  bool is_infinite() const noexcept { return den_ == 0; }

  double to_double() const noexcept {
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(a.num_) * b.den_;
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace l0iso
