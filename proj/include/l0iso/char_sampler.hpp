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
#include <variant>
#include <vector>

namespace l0iso::sampler {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

// {x : A x <= b}, A row-major with m rows.
struct Polytope {
  unsigned n = 0;
  std::vector<double> a;
  std::vector<double> b;
};

struct Oracle {
  std::function<bool(std::span<const double>)> contains;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// A box, a polytope with a certified interior point, or a membership oracle
// with a bounding box. Oracle bodies must be convex for chords to be exact.
class ConvexBody {
 public:
  enum class Kind { kBox, kPolytope, kOracle };

  static ConvexBody box(std::vector<double> lo, std::vector<double> hi);

  // Without an interior hint, a strictly feasible point is searched for and
  // kDegenerate is thrown if none is found. The optional bounds must contain
  // the polytope; they are needed only for Monte Carlo over the body.
  static ConvexBody polytope(Polytope p, std::optional<std::vector<double>> interior = {},
                             std::optional<Box> bounds = {});

  // `start` must be a member; `inner_radius` is an optional hint r with an
  // r-ball around `start` inside the body.
  static ConvexBody oracle(unsigned n, Oracle oracle, Box bounds, std::vector<double> start,
                           double inner_radius = 0.0);

  Kind kind() const noexcept;
  unsigned dimension() const noexcept { return n_; }

  // Polytope rows are tested with a relative slack of 1e-12.
  bool contains(std::span<const double> x) const;

  const std::vector<double>& interior_point() const noexcept { return interior_; }
  const std::optional<Box>& bounds() const noexcept { return bounds_; }
  double inner_radius() const noexcept { return inner_radius_; }
  const Polytope* as_polytope() const { return std::get_if<Polytope>(&shape_); }
  const Box* as_box() const { return std::get_if<Box>(&shape_); }

 private:
  ConvexBody(unsigned n, std::variant<Box, Polytope, Oracle> shape);

  unsigned n_;
  std::variant<Box, Polytope, Oracle> shape_;
  std::vector<double> interior_;
  std::optional<Box> bounds_;
  double inner_radius_ = 0.0;
};

// Maximal {t : x + t d in body} around t = 0. Analytic for boxes and
// polytopes; bracket doubling plus bisection to 1e-10 of the box diameter for
// oracles. Throws kState when x is outside the body and kDomain when the
// chord is unbounded.
Interval line_chord(const ConvexBody& body, std::span<const double> x, std::span<const double> d);

// Same, always by bisection on the membership test. Needs a bounding box.
Interval bisection_chord(const ConvexBody& body, std::span<const double> x,
                         std::span<const double> d);

// Values of coordinate `axis` along the axis-parallel line through x.
Interval chord(const ConvexBody& body, std::span<const double> x, unsigned axis);

struct ChainState {
  std::vector<double> x;
  std::uint64_t step = 0;
  std::uint64_t degenerate = 0;
  std::mt19937_64 rng;
};

// Chain started at `start` (the body's interior point when empty) with the
// generator for (seed, stream).
ChainState make_chain(const ConvexBody& body, std::vector<double> start, std::uint64_t seed,
                      std::uint64_t stream = 0);

struct StepResult {
  unsigned axis = 0;        // CHAR only
  bool degenerate = false;  // zero-length chord: point kept
};

StepResult char_step(ChainState& state, const ConvexBody& body);

// `direction`, when non-null, receives the unit direction used.
StepResult hit_and_run_step(ChainState& state, const ConvexBody& body,
                            std::vector<double>* direction = nullptr);

enum class ChainKind { kChar, kHitAndRun };

struct DiagnosticsOptions {
  ChainKind chain = ChainKind::kChar;
  std::uint64_t steps = 100000;  // total steps, burn-in included
  std::uint64_t burn_in = 1000;
  std::uint64_t seed = 0;
  std::vector<double> start;  // empty: the body's interior point
  // Post-burn-in length of the independent reference chain used for non-box
  // bodies; 0 means the same length as the main chain.
  std::uint64_t reference_steps = 0;
  bool check_membership = true;
  double alpha = 0.01;
  // Called with (step, point) for every post-burn-in state.
  std::function<void(std::uint64_t, std::span<const double>)> trajectory;
};

struct CoordinateDiagnostic {
  double ks_statistic = 0.0;
  double tau_int = 1.0;
  double effective_n = 0.0;
  double p_value = 0.0;
  double mean = 0.0;
};

struct DiagnosticsReport {
  std::vector<CoordinateDiagnostic> coordinates;
  std::uint64_t samples = 0;
  std::uint64_t degenerate_steps = 0;
  std::uint64_t membership_violations = 0;
  bool reference_chain = false;  // false: exact uniform marginals of a box
  std::vector<std::uint64_t> axis_counts;  // CHAR axis choices after burn-in
  bool stationary = false;  // every p-value > alpha and no violations
};

// Throws kInvalidArgument when steps <= burn_in.
DiagnosticsReport run_diagnostics(const ConvexBody& body, const DiagnosticsOptions& options);

// Integrated autocorrelation time with Sokal's adaptive window (c = 5).
double integrated_autocorrelation_time(std::span<const double> series);

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

// p-value for statistic D at effective sample size n (Stephens' correction).
double ks_p_value(double d, double effective_n);

struct DetailedBalanceReport {
  unsigned cells_per_axis = 0;
  std::uint64_t steps = 0;
  double statistic = 0.0;  // sum over pairs of squared standardized P_ij - P_ji
  std::uint64_t pairs = 0;  // degrees of freedom
  double z = 0.0;           // (statistic - pairs) / sqrt(2 pairs)
  bool passed = false;      // z <= 3
};

// CHAR on [0,1]^2 started from a uniform point, cells of side 1/m. Compares
// the empirical transition matrix with its transpose, which is the detailed
// balance condition for the uniform stationary vector.
DetailedBalanceReport transition_symmetry_test(unsigned m, std::uint64_t steps,
                                               std::uint64_t seed);

}  // namespace l0iso::sampler
