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

#include "l0iso/char_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l0iso/error.hpp"
#include "l0iso/rng.hpp"

namespace l0iso::sampler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRowSlack = 1e-12;

void check_box(const Box& box, unsigned n) {
  if (box.lo.size() != n || box.hi.size() != n) {
    fail(ErrorCode::kDimension, "box bounds must have one entry per coordinate");
  }
  for (unsigned i = 0; i < n; ++i) {
    if (!std::isfinite(box.lo[i]) || !std::isfinite(box.hi[i]) || !(box.lo[i] <= box.hi[i])) {
      fail(ErrorCode::kInvalidArgument, "box bounds must be finite with lo <= hi");
    }
  }
}

// max_j (a_j x - b_j) / |a_j|
double worst_row(const Polytope& p, std::span<const double> x, std::size_t* arg = nullptr) {
  const std::size_t m = p.b.size();
  double worst = -kInf;
  for (std::size_t j = 0; j < m; ++j) {
    double dot = 0.0;
    double norm = 0.0;
    for (unsigned i = 0; i < p.n; ++i) {
      dot += p.a[j * p.n + i] * x[i];
      norm += p.a[j * p.n + i] * p.a[j * p.n + i];
    }
    const double v = (dot - p.b[j]) / std::sqrt(norm);
    if (v > worst) {
      worst = v;
      if (arg) *arg = j;
    }
  }
  return worst;
}

std::optional<std::vector<double>> find_interior(const Polytope& p) {
  std::vector<double> x(p.n, 0.0);
  if (worst_row(p, x) < 0.0) return x;
  double scale = 1.0;
  for (double v : p.b) scale = std::max(scale, std::fabs(v));
  std::vector<double> best = x;
  double best_value = worst_row(p, x);
  // Subgradient descent on the worst normalized violation.
  for (int it = 1; it <= 200000; ++it) {
    std::size_t j = 0;
    const double v = worst_row(p, x, &j);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
    double norm = 0.0;
    for (unsigned i = 0; i < p.n; ++i) norm += p.a[j * p.n + i] * p.a[j * p.n + i];
    norm = std::sqrt(norm);
    const double eta = scale / std::sqrt(static_cast<double>(it));
    for (unsigned i = 0; i < p.n; ++i) x[i] -= eta * p.a[j * p.n + i] / norm;
  }
  if (best_value < 0.0) return best;
  return std::nullopt;
}

// t-range of the bounding box along d.
Interval box_interval(const Box& box, std::span<const double> x, std::span<const double> d) {
  Interval out{-kInf, kInf};
  bool moving = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] == 0.0) continue;
    moving = true;
    double a = (box.lo[i] - x[i]) / d[i];
    double b = (box.hi[i] - x[i]) / d[i];
    if (a > b) std::swap(a, b);
    out.lo = std::max(out.lo, a);
    out.hi = std::min(out.hi, b);
  }
  if (!moving) fail(ErrorCode::kInvalidArgument, "zero direction");
  out.lo = std::min(out.lo, 0.0);
  out.hi = std::max(out.hi, 0.0);
  return out;
}

Interval polytope_interval(const Polytope& p, std::span<const double> x,
                           std::span<const double> d) {
  Interval out{-kInf, kInf};
  const std::size_t m = p.b.size();
  for (std::size_t j = 0; j < m; ++j) {
    double ax = 0.0;
    double ad = 0.0;
    for (unsigned i = 0; i < p.n; ++i) {
      ax += p.a[j * p.n + i] * x[i];
      ad += p.a[j * p.n + i] * d[i];
    }
    const double slack = std::max(0.0, p.b[j] - ax);
    if (ad > 0.0) {
      out.hi = std::min(out.hi, slack / ad);
    } else if (ad < 0.0) {
      out.lo = std::max(out.lo, slack / ad);
    }
  }
  if (!std::isfinite(out.lo) || !std::isfinite(out.hi)) {
    fail(ErrorCode::kDomain, "polytope is unbounded along the chord");
  }
  return out;
}

// Largest t in [0, limit] with x + t d inside, assuming t = 0 is inside.
double bisect_side(const ConvexBody& body, std::span<const double> x, std::span<const double> d,
                   double limit, double tol) {
  std::vector<double> y(x.size());
  const auto inside = [&](double t) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t * d[i];
    return body.contains(y);
  };
  if (limit <= 0.0) return 0.0;
  if (inside(limit)) return limit;
  double in = 0.0;
  double out = limit;
  for (double probe = tol; probe < limit; probe *= 2.0) {
    if (!inside(probe)) {
      out = probe;
      break;
    }
    in = probe;
  }
  while (out - in > tol) {
    const double mid = 0.5 * (in + out);
    (inside(mid) ? in : out) = mid;
  }
  return in;
}

void check_member(const ConvexBody& body, std::span<const double> x) {
  if (x.size() != body.dimension()) fail(ErrorCode::kDimension, "point dimension mismatch");
  if (!body.contains(x)) fail(ErrorCode::kState, "point is outside the body");
}

}  // namespace

ConvexBody::ConvexBody(unsigned n, std::variant<Box, Polytope, Oracle> shape)
    : n_(n), shape_(std::move(shape)) {
  if (n == 0) fail(ErrorCode::kDimension, "body needs n >= 1");
}

ConvexBody ConvexBody::box(std::vector<double> lo, std::vector<double> hi) {
  const auto n = static_cast<unsigned>(lo.size());
  Box b{std::move(lo), std::move(hi)};
  check_box(b, n);
  ConvexBody body(n, b);
  body.interior_.resize(n);
  for (unsigned i = 0; i < n; ++i) body.interior_[i] = 0.5 * (b.lo[i] + b.hi[i]);
  body.bounds_ = std::move(b);
  return body;
}

ConvexBody ConvexBody::polytope(Polytope p, std::optional<std::vector<double>> interior,
                                std::optional<Box> bounds) {
  if (p.n == 0) fail(ErrorCode::kDimension, "polytope needs n >= 1");
  if (p.b.empty() || p.a.size() != p.b.size() * p.n) {
    fail(ErrorCode::kDimension, "polytope A must be m x n with m = |b| >= 1");
  }
  for (std::size_t j = 0; j < p.b.size(); ++j) {
    double norm = 0.0;
    for (unsigned i = 0; i < p.n; ++i) norm += std::fabs(p.a[j * p.n + i]);
    if (norm == 0.0) fail(ErrorCode::kInvalidArgument, "polytope row with zero normal");
  }
  if (bounds) check_box(*bounds, p.n);
  if (interior) {
    if (interior->size() != p.n) fail(ErrorCode::kDimension, "interior point dimension mismatch");
    if (!(worst_row(p, *interior) < 0.0)) {
      fail(ErrorCode::kDegenerate, "supplied interior point is not strictly feasible");
    }
  } else {
    interior = find_interior(p);
    if (!interior) fail(ErrorCode::kDegenerate, "no strictly feasible point found");
  }
  const unsigned n = p.n;
  ConvexBody body(n, std::move(p));
  body.interior_ = std::move(*interior);
  body.bounds_ = std::move(bounds);
  return body;
}

ConvexBody ConvexBody::oracle(unsigned n, Oracle oracle, Box bounds, std::vector<double> start,
                              double inner_radius) {
  if (!oracle.contains) fail(ErrorCode::kInvalidArgument, "membership test missing");
  check_box(bounds, n);
  ConvexBody body(n, std::move(oracle));
  body.bounds_ = std::move(bounds);
  body.inner_radius_ = inner_radius;
  if (start.size() != n) fail(ErrorCode::kDimension, "start point dimension mismatch");
  for (unsigned i = 0; i < n; ++i) {
    if (start[i] < body.bounds_->lo[i] || start[i] > body.bounds_->hi[i]) {
      fail(ErrorCode::kState, "start point outside the bounding box");
    }
  }
  if (!body.contains(start)) fail(ErrorCode::kState, "start point is not a member");
  body.interior_ = std::move(start);
  return body;
}

ConvexBody::Kind ConvexBody::kind() const noexcept {
  return static_cast<Kind>(shape_.index());
}

bool ConvexBody::contains(std::span<const double> x) const {
  if (x.size() != n_) return false;
  if (const Box* b = std::get_if<Box>(&shape_)) {
    for (unsigned i = 0; i < n_; ++i) {
      if (!(x[i] >= b->lo[i] && x[i] <= b->hi[i])) return false;
    }
    return true;
  }
  if (const Polytope* p = std::get_if<Polytope>(&shape_)) {
    for (std::size_t j = 0; j < p->b.size(); ++j) {
      double dot = 0.0;
      double mag = std::fabs(p->b[j]);
      for (unsigned i = 0; i < n_; ++i) {
        dot += p->a[j * n_ + i] * x[i];
        mag += std::fabs(p->a[j * n_ + i] * x[i]);
      }
      if (!(dot <= p->b[j] + kRowSlack * (1.0 + mag))) return false;
    }
    return true;
  }
  const Oracle& o = std::get<Oracle>(shape_);
  if (bounds_) {
    for (unsigned i = 0; i < n_; ++i) {
      if (!(x[i] >= bounds_->lo[i] && x[i] <= bounds_->hi[i])) return false;
    }
  }
  return o.contains(x);
}

Interval bisection_chord(const ConvexBody& body, std::span<const double> x,
                         std::span<const double> d) {
  check_member(body, x);
  if (!body.bounds()) fail(ErrorCode::kInvalidArgument, "bisection needs a bounding box");
  const Box& box = *body.bounds();
  double diameter = 0.0;
  double dnorm = 0.0;
  for (unsigned i = 0; i < body.dimension(); ++i) {
    diameter += (box.hi[i] - box.lo[i]) * (box.hi[i] - box.lo[i]);
    dnorm += d[i] * d[i];
  }
  const double tol = std::max(1e-10 * std::sqrt(diameter / dnorm), 1e-300);
  const Interval range = box_interval(box, x, d);
  std::vector<double> back(d.begin(), d.end());
  for (double& v : back) v = -v;
  return {-bisect_side(body, x, back, -range.lo, tol), bisect_side(body, x, d, range.hi, tol)};
}

Interval line_chord(const ConvexBody& body, std::span<const double> x, std::span<const double> d) {
  check_member(body, x);
  if (d.size() != body.dimension()) fail(ErrorCode::kDimension, "direction dimension mismatch");
  switch (body.kind()) {
    case ConvexBody::Kind::kBox: {
      Interval iv = box_interval(*body.as_box(), x, d);
      return iv;
    }
    case ConvexBody::Kind::kPolytope:
      return polytope_interval(*body.as_polytope(), x, d);
    case ConvexBody::Kind::kOracle:
      break;
  }
  return bisection_chord(body, x, d);
}

Interval chord(const ConvexBody& body, std::span<const double> x, unsigned axis) {
  if (axis >= body.dimension()) fail(ErrorCode::kDimension, "axis out of range");
  std::vector<double> d(body.dimension(), 0.0);
  d[axis] = 1.0;
  const Interval t = line_chord(body, x, d);
  return {x[axis] + t.lo, x[axis] + t.hi};
}

ChainState make_chain(const ConvexBody& body, std::vector<double> start, std::uint64_t seed,
                      std::uint64_t stream) {
  if (start.empty()) start = body.interior_point();
  check_member(body, start);
  return ChainState{std::move(start), 0, 0, make_rng(seed, stream)};
}

namespace {

bool is_degenerate(const Interval& iv, double scale) {
  return !(iv.length() > 1e-14 * (1.0 + scale));
}

}  // namespace

StepResult char_step(ChainState& state, const ConvexBody& body) {
  StepResult out;
  out.axis = static_cast<unsigned>(uniform_index(state.rng, body.dimension()));
  const Interval iv = chord(body, state.x, out.axis);
  const double u = uniform01(state.rng);
  ++state.step;
  if (is_degenerate(iv, std::fabs(state.x[out.axis]))) {
    out.degenerate = true;
    ++state.degenerate;
    return out;
  }
  state.x[out.axis] = iv.lo + iv.length() * u;
  return out;
}

StepResult hit_and_run_step(ChainState& state, const ConvexBody& body,
                            std::vector<double>* direction) {
  const unsigned n = body.dimension();
  std::vector<double> d(n);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (double& v : d) {
      v = standard_normal(state.rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
  }
  for (double& v : d) v /= norm;
  const Interval iv = line_chord(body, state.x, d);
  const double u = uniform01(state.rng);
  ++state.step;
  StepResult out;
  double scale = 0.0;
  for (double v : state.x) scale = std::max(scale, std::fabs(v));
  if (is_degenerate(iv, scale)) {
    out.degenerate = true;
    ++state.degenerate;
  } else {
    const double t = iv.lo + iv.length() * u;
    for (unsigned i = 0; i < n; ++i) state.x[i] += t * d[i];
  }
  if (direction) *direction = std::move(d);
  return out;
}

double integrated_autocorrelation_time(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) return 1.0;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> c(series.begin(), series.end());
  for (double& v : c) v -= mean;
  double c0 = 0.0;
  for (double v : c) c0 += v * v;
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double ct = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) ct += c[i] * c[i + lag];
    tau += 2.0 * ct / c0;
    if (static_cast<double>(lag) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_value(double d, double effective_n) {
  if (!(effective_n > 0.0)) return 1.0;
  const double root = std::sqrt(effective_n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

namespace {

struct Trace {
  std::vector<std::vector<double>> series;  // per coordinate
  std::vector<std::uint64_t> axis_counts;
  std::uint64_t degenerate = 0;
  std::uint64_t violations = 0;
};

Trace run_chain(const ConvexBody& body, const DiagnosticsOptions& o, std::uint64_t samples,
                std::uint64_t stream, bool emit) {
  const unsigned n = body.dimension();
  ChainState state = make_chain(body, o.start, o.seed, stream);
  Trace trace;
  trace.series.assign(n, {});
  for (auto& s : trace.series) s.reserve(samples);
  trace.axis_counts.assign(n, 0);
  const std::uint64_t total = o.burn_in + samples;
  for (std::uint64_t step = 1; step <= total; ++step) {
    StepResult r;
    if (o.chain == ChainKind::kChar) {
      r = char_step(state, body);
    } else {
      r = hit_and_run_step(state, body);
    }
    if (o.check_membership && !body.contains(state.x)) ++trace.violations;
    if (step <= o.burn_in) continue;
    if (r.degenerate) ++trace.degenerate;
    if (o.chain == ChainKind::kChar) ++trace.axis_counts[r.axis];
    for (unsigned i = 0; i < n; ++i) trace.series[i].push_back(state.x[i]);
    if (emit && o.trajectory) o.trajectory(step, state.x);
  }
  return trace;
}

double one_sample_uniform_ks(std::vector<double> values, double lo, double hi) {
  std::sort(values.begin(), values.end());
  const double m = static_cast<double>(values.size());
  const double width = hi - lo;
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = width > 0.0 ? std::clamp((values[i] - lo) / width, 0.0, 1.0) : 1.0;
    d = std::max({d, (i + 1) / m - f, f - i / m});
  }
  return d;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double mean_of(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : static_cast<double>(s / v.size());
}

}  // namespace

DiagnosticsReport run_diagnostics(const ConvexBody& body, const DiagnosticsOptions& options) {
  if (options.steps <= options.burn_in) {
    fail(ErrorCode::kInvalidArgument, "steps must exceed burn-in");
  }
  const unsigned n = body.dimension();
  const std::uint64_t samples = options.steps - options.burn_in;
  Trace main = run_chain(body, options, samples, 0, true);

  DiagnosticsReport report;
  report.samples = samples;
  report.degenerate_steps = main.degenerate;
  report.membership_violations = main.violations;
  report.axis_counts = main.axis_counts;
  report.reference_chain = body.kind() != ConvexBody::Kind::kBox;

  std::optional<Trace> reference;
  if (report.reference_chain) {
    const std::uint64_t ref = options.reference_steps ? options.reference_steps : samples;
    reference = run_chain(body, options, ref, 1, false);
    report.membership_violations += reference->violations;
  }

  report.stationary = report.membership_violations == 0;
  for (unsigned i = 0; i < n; ++i) {
    CoordinateDiagnostic c;
    const auto& s = main.series[i];
    c.mean = mean_of(s);
    c.tau_int = integrated_autocorrelation_time(s);
    const double ne = static_cast<double>(s.size()) / c.tau_int;
    if (!reference) {
      const Box& box = *body.as_box();
      c.ks_statistic = one_sample_uniform_ks(s, box.lo[i], box.hi[i]);
      c.effective_n = ne;
    } else {
      const auto& r = reference->series[i];
      const double re = static_cast<double>(r.size()) / integrated_autocorrelation_time(r);
      c.ks_statistic = two_sample_ks(s, r);
      c.effective_n = ne * re / (ne + re);
    }
    c.p_value = ks_p_value(c.ks_statistic, c.effective_n);
    if (!(c.p_value > options.alpha)) report.stationary = false;
    report.coordinates.push_back(c);
  }
  return report;
}

DetailedBalanceReport transition_symmetry_test(unsigned m, std::uint64_t steps,
                                               std::uint64_t seed) {
  if (m < 2) fail(ErrorCode::kInvalidArgument, "need at least 2 cells per axis");
  if (steps == 0) fail(ErrorCode::kInvalidArgument, "need at least one step");
  const ConvexBody body = ConvexBody::box({0.0, 0.0}, {1.0, 1.0});
  auto rng = make_rng(seed, 7);
  std::vector<double> start{uniform01(rng), uniform01(rng)};
  ChainState state = make_chain(body, start, seed, 0);

  const std::size_t cells = std::size_t{m} * m;
  const auto cell_of = [&](const std::vector<double>& x) {
    const auto cx = std::min<std::size_t>(m - 1, static_cast<std::size_t>(x[0] * m));
    const auto cy = std::min<std::size_t>(m - 1, static_cast<std::size_t>(x[1] * m));
    return cx + m * cy;
  };
  std::vector<std::uint64_t> counts(cells * cells, 0);
  std::vector<std::uint64_t> visits(cells, 0);
  std::size_t from = cell_of(state.x);
  for (std::uint64_t t = 0; t < steps; ++t) {
    char_step(state, body);
    const std::size_t to = cell_of(state.x);
    ++counts[from * cells + to];
    ++visits[from];
    from = to;
  }

  DetailedBalanceReport out;
  out.cells_per_axis = m;
  out.steps = steps;
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = i + 1; j < cells; ++j) {
      if (counts[i * cells + j] + counts[j * cells + i] == 0) continue;
      if (visits[i] == 0 || visits[j] == 0) continue;
      const double pij = static_cast<double>(counts[i * cells + j]) / visits[i];
      const double pji = static_cast<double>(counts[j * cells + i]) / visits[j];
      const double var = pij * (1.0 - pij) / visits[i] + pji * (1.0 - pji) / visits[j];
      if (!(var > 0.0)) continue;
      out.statistic += (pij - pji) * (pij - pji) / var;
      ++out.pairs;
    }
  }
  if (out.pairs > 0) {
    const double df = static_cast<double>(out.pairs);
    out.z = (out.statistic - df) / std::sqrt(2.0 * df);
  }
  out.passed = out.pairs > 0 && out.z <= 3.0;
  return out;
}

}  // namespace l0iso::sampler
