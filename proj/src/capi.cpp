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

#include "l0iso/l0iso.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "l0iso/binomial.hpp"
#include "l0iso/char_sampler.hpp"
#include "l0iso/error.hpp"
#include "l0iso/gridset.hpp"
#include "l0iso/hypercube.hpp"
#include "l0iso/io.hpp"
#include "l0iso/rng.hpp"
#include "l0iso/splitting.hpp"

#ifndef L0ISO_VERSION
#define L0ISO_VERSION "0.0.0"
#endif

using namespace l0iso;

struct l0_vertex_set {
  cube::VertexSet v;
};
struct l0_grid_set {
  grid::GridSet g;
};
struct l0_weight {
  split::BalancedWeight w;
};
struct l0_point_cloud {
  split::PointCloud c;
};
struct l0_body {
  sampler::ConvexBody b;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
l0_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return L0_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<l0_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return L0_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return L0_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return L0_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_bits(const cube::BitVector& v, char out[L0_BITS_CAPACITY]) {
  const std::string s = v.to_string();
  std::memcpy(out, s.c_str(), s.size() + 1);
}

cube::BitVector bits_arg(const char* bits) {
  need(bits, "bit string");
  return cube::BitVector::parse(bits);
}

grid::Direction direction(l0_direction d) {
  if (d != L0_PLUS && d != L0_MINUS) fail(ErrorCode::kInvalidArgument, "unknown direction");
  return d == L0_PLUS ? grid::Direction::kPlus : grid::Direction::kMinus;
}

template <class Handle, class Value>
void emit(Handle** out, Value&& value) {
  need(out, "output handle");
  *out = new Handle{std::forward<Value>(value)};
}

}  // namespace

extern "C" {

const char* l0_version(void) { return L0ISO_VERSION; }

const char* l0_last_error(void) { return g_last_error.c_str(); }

const char* l0_status_name(l0_status status) {
  switch (status) {
    case L0_OK: return "ok";
    case L0_INVALID_ARGUMENT: return "invalid argument";
    case L0_DIMENSION: return "dimension error";
    case L0_DOMAIN: return "domain error";
    case L0_CAPACITY: return "capacity error";
    case L0_DEGENERATE: return "degenerate input";
    case L0_PARSE: return "parse error";
    case L0_STATE: return "state error";
    case L0_BALANCE: return "balance error";
    case L0_FAILED: return "failed";
    case L0_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void l0_free_string(char* s) { std::free(s); }

// hypercube

l0_status l0_l0_norm(const char* bits, unsigned* out) {
  return guard([&] {
    need(out, "out");
    *out = cube::l0_norm(bits_arg(bits));
  });
}

l0_status l0_hamming_distance(const char* s, const char* t, unsigned* out) {
  return guard([&] {
    need(out, "out");
    *out = cube::hamming_distance(bits_arg(s), bits_arg(t));
  });
}

l0_status l0_vertex_set_create(unsigned n, l0_vertex_set** out) {
  return guard([&] { emit(out, cube::VertexSet(n)); });
}

l0_status l0_vertex_set_from_json(const char* json, l0_vertex_set** out) {
  return guard([&] {
    need(json, "json");
    emit(out, io::vertex_set_from_json(json));
  });
}

l0_status l0_vertex_set_to_json(const l0_vertex_set* set, char** out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = dup_string(io::vertex_set_to_json(set->v));
  });
}

void l0_vertex_set_free(l0_vertex_set* set) { delete set; }

l0_status l0_vertex_set_insert(l0_vertex_set* set, const char* bits) {
  return guard([&] {
    need(set, "set");
    set->v.insert(bits_arg(bits));
  });
}

l0_status l0_vertex_set_contains(const l0_vertex_set* set, const char* bits, int* out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = set->v.contains(bits_arg(bits)) ? 1 : 0;
  });
}

l0_status l0_vertex_set_size(const l0_vertex_set* set, uint64_t* out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = set->v.size();
  });
}

l0_status l0_vertex_boundary(const l0_vertex_set* set, l0_vertex_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, cube::vertex_boundary(set->v));
  });
}

l0_status l0_vertex_sets_axis_disjoint(const l0_vertex_set* a, const l0_vertex_set* b, int* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = cube::are_axis_disjoint(a->v, b->v) ? 1 : 0;
  });
}

l0_status l0_halving_construction(unsigned n, l0_vertex_set** s1, l0_vertex_set** s2,
                                  l0_vertex_set** s3) {
  return guard([&] {
    need(s1, "s1");
    need(s2, "s2");
    need(s3, "s3");
    cube::HalvingConstruction h = cube::halving_construction(n);
    auto* a = new l0_vertex_set{std::move(h.s1)};
    auto* b = new l0_vertex_set{std::move(h.s2)};
    auto* c = new l0_vertex_set{std::move(h.s3)};
    *s1 = a;
    *s2 = b;
    *s3 = c;
  });
}

l0_status l0_halving_counts_compute(unsigned n, l0_halving_counts* out) {
  return guard([&] {
    need(out, "out");
    const cube::HalvingCounts h = cube::halving_counts(n);
    const Rational r = h.ratio();
    *out = {h.s1, h.s2, h.s3, r.num(), r.den()};
  });
}

l0_status l0_psi_grid_exact(unsigned n, unsigned k, unsigned threads, l0_psi_result* out,
                            l0_grid_set** witness) {
  return guard([&] {
    need(out, "out");
    cube::PsiGridResult r = cube::psi_grid_exact(n, k, threads);
    out->infinite = r.value.is_infinite() ? 1 : 0;
    out->num = r.value.is_infinite() ? 0 : r.value.num();
    out->den = r.value.is_infinite() ? 0 : r.value.den();
    out->boundary = r.boundary;
    out->residual = r.residual;
    out->subsets_visited = r.subsets_visited;
    if (witness) *witness = new l0_grid_set{std::move(r.witness)};
  });
}

l0_status l0_cell_image(const l0_vertex_set* set, l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, cube::cell_image(set->v));
  });
}

// grid sets

l0_status l0_grid_set_create(unsigned n, unsigned k, l0_grid_set** out) {
  return guard([&] { emit(out, grid::GridSet(grid::GridSpec{n, k})); });
}

l0_status l0_grid_set_from_json(const char* json, l0_grid_set** out) {
  return guard([&] {
    need(json, "json");
    emit(out, io::grid_set_from_json(json));
  });
}

l0_status l0_grid_set_to_json(const l0_grid_set* set, char** out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = dup_string(io::grid_set_to_json(set->g));
  });
}

l0_status l0_grid_set_clone(const l0_grid_set* set, l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, grid::GridSet(set->g));
  });
}

void l0_grid_set_free(l0_grid_set* set) { delete set; }

l0_status l0_grid_set_spec(const l0_grid_set* set, unsigned* n, unsigned* k) {
  return guard([&] {
    need(set, "set");
    if (n) *n = set->g.spec().n;
    if (k) *k = set->g.spec().k;
  });
}

l0_status l0_grid_set_insert(l0_grid_set* set, const unsigned* index) {
  return guard([&] {
    need(set, "set");
    need(index, "index");
    set->g.insert(std::span<const unsigned>(index, set->g.dimension()));
  });
}

l0_status l0_grid_set_cardinality(const l0_grid_set* set, uint64_t* out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = set->g.cardinality();
  });
}

l0_status l0_grid_set_equal(const l0_grid_set* a, const l0_grid_set* b, int* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = a->g == b->g ? 1 : 0;
  });
}

l0_status l0_grid_volume(const l0_grid_set* set, uint64_t* num, uint64_t* den) {
  return guard([&] {
    need(set, "set");
    need(num, "num");
    need(den, "den");
    const Rational v = grid::volume(set->g);
    *num = v.num();
    *den = v.den();
  });
}

l0_status l0_grid_is_anchored(const l0_grid_set* set, int* out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = grid::is_anchored(set->g) ? 1 : 0;
  });
}

l0_status l0_grid_boundary(const l0_grid_set* set, l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, grid::l0_boundary(set->g));
  });
}

l0_status l0_grid_axis_disjoint(const l0_grid_set* a, const l0_grid_set* b, int* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = grid::are_axis_disjoint(a->g, b->g) ? 1 : 0;
  });
}

l0_status l0_grid_shake(const l0_grid_set* set, unsigned axis, l0_direction dir,
                        l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, grid::shake(set->g, axis, direction(dir)));
  });
}

l0_status l0_grid_full_shake(const l0_grid_set* set, l0_direction dir, l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, grid::full_shake(set->g, direction(dir)));
  });
}

l0_status l0_grid_refine(const l0_grid_set* set, unsigned factor, l0_grid_set** out) {
  return guard([&] {
    need(set, "set");
    emit(out, grid::refine(set->g, factor));
  });
}

l0_status l0_grid_hamming_ball(unsigned n, unsigned k, unsigned threshold, unsigned radius,
                               l0_grid_set** out) {
  return guard([&] { emit(out, grid::hamming_ball(grid::GridSpec{n, k}, threshold, radius)); });
}

l0_status l0_grid_ratio(const l0_grid_set* s1, uint64_t* num, uint64_t* den, int* infinite) {
  return guard([&] {
    need(s1, "s1");
    need(num, "num");
    need(den, "den");
    need(infinite, "infinite");
    const Rational r = grid::isoperimetric_ratio(s1->g);
    *infinite = r.is_infinite() ? 1 : 0;
    *num = r.is_infinite() ? 0 : r.num();
    *den = r.is_infinite() ? 0 : r.den();
  });
}

// binomial

l0_status l0_binom_pmf(unsigned n, double q, long k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = binom::binom_pmf({n, q}, k);
  });
}

l0_status l0_binom_cdf(unsigned n, double q, long k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = binom::binom_cdf({n, q}, k);
  });
}

l0_status l0_hamming_ball_volume(double p, unsigned r, unsigned n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = binom::hamming_ball_volume({p, r, n});
  });
}

l0_status l0_step3_ratio(unsigned n, double p, unsigned k, double* ratio, int* finite) {
  return guard([&] {
    need(ratio, "ratio");
    need(finite, "finite");
    const binom::Step3Ratio r = binom::step3_ratio(n, p, k);
    *ratio = r.value;
    *finite = r.finite ? 1 : 0;
  });
}

l0_status l0_binom_bound_scan(unsigned n_max, unsigned log_points, unsigned threads,
                              l0_scan_row_fn sink, void* user, l0_scan_summary* summary,
                              double* per_n_min) {
  return guard([&] {
    need(summary, "summary");
    std::function<void(const binom::ScanRow&)> fn;
    if (sink) {
      fn = [&](const binom::ScanRow& r) {
        const l0_scan_row row{r.n, r.p, r.k, r.ratio, r.scaled};
        sink(&row, user);
      };
    }
    const binom::ScanSummary s = binom::binom_bound_scan(n_max, log_points, fn, threads);
    summary->c_hat = s.c_hat;
    summary->argmin = {s.argmin.n, s.argmin.p, s.argmin.k, s.argmin.ratio, s.argmin.scaled};
    summary->rows = s.rows;
    if (per_n_min) std::copy(s.per_n_min.begin(), s.per_n_min.end(), per_n_min);
  });
}

l0_status l0_scan_p_grid(unsigned n, unsigned log_points, double* out, size_t capacity,
                         size_t* count) {
  return guard([&] {
    need(count, "count");
    const std::vector<double> grid = binom::scan_p_grid(n, log_points);
    *count = grid.size();
    if (out) std::copy_n(grid.begin(), std::min(capacity, grid.size()), out);
  });
}

l0_status l0_growth_thresholds(unsigned n, double p, double x, int by_ratios, unsigned* k1,
                               unsigned* k2) {
  return guard([&] {
    need(k1, "k1");
    need(k2, "k2");
    const binom::GrowthThresholds t = by_ratios ? binom::growth_thresholds_by_ratios(n, p, x)
                                                : binom::growth_thresholds(n, p, x);
    *k1 = t.k1;
    *k2 = t.k2;
  });
}

l0_status l0_stirling_check(unsigned n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = binom::stirling_check(n);
  });
}

l0_status l0_berry_esseen_bound(unsigned n, double p, double* out) {
  return guard([&] {
    need(out, "out");
    *out = binom::berry_esseen_bound(n, p);
  });
}

// splitting

l0_status l0_weight_from_json(const char* json, l0_weight** out) {
  return guard([&] {
    need(json, "json");
    emit(out, io::weight_from_json(json));
  });
}

l0_status l0_weight_to_json(const l0_weight* w, char** out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    *out = dup_string(io::weight_to_json(w->w));
  });
}

l0_status l0_weight_uniform(unsigned n, l0_weight** out) {
  return guard([&] { emit(out, split::uniform_weight(n)); });
}

l0_status l0_weight_random(unsigned n, unsigned pairs, int antipodal, uint64_t seed,
                           l0_weight** out) {
  return guard([&] {
    auto rng = make_rng(seed, 0);
    emit(out, antipodal ? split::random_antipodal_weight(n, pairs, rng)
                        : split::random_ipf_weight(n, pairs, rng));
  });
}

void l0_weight_free(l0_weight* w) { delete w; }

l0_status l0_weight_info(const l0_weight* w, unsigned* n, uint64_t* support,
                         double* balance_error) {
  return guard([&] {
    need(w, "weight");
    if (n) *n = w->w.dimension();
    if (support) *support = w->w.support_size();
    if (balance_error) *balance_error = w->w.balance_error();
  });
}

l0_status l0_split(const l0_weight* w, const char* z, l0_split_certificate* out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    const split::SplitCertificate c = split::split(w->w, bits_arg(z));
    copy_bits(c.z, out->z);
    out->a = c.a;
    out->b = c.b;
    out->c = c.c;
    out->ratio = c.ratio;
  });
}

l0_status l0_expected_band_masses(unsigned n, uint64_t nums[3], uint64_t dens[3]) {
  return guard([&] {
    need(nums, "nums");
    need(dens, "dens");
    const split::BandMasses m = split::expected_band_masses(n);
    const Rational* parts[3] = {&m.a, &m.b, &m.c};
    for (int i = 0; i < 3; ++i) {
      nums[i] = parts[i]->num();
      dens[i] = parts[i]->den();
    }
  });
}

l0_status l0_joint_indicator_prob(unsigned n, unsigned k, double* out) {
  return guard([&] {
    need(out, "out");
    *out = split::joint_indicator_prob(n, k);
  });
}

l0_status l0_fluctuation_gap(unsigned n, double* out) {
  return guard([&] {
    need(out, "out");
    *out = split::fluctuation_gap(n);
  });
}

l0_status l0_small_weight_sum(const l0_weight* w, const char* s, double* out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    *out = split::small_weight_sum(w->w, bits_arg(s));
  });
}

l0_status l0_small_weight_max(const l0_weight* w, double* value, char center[L0_BITS_CAPACITY]) {
  return guard([&] {
    need(w, "weight");
    need(value, "value");
    const split::SmallWeightMax m = split::small_weight_max(w->w);
    *value = m.value;
    if (center) copy_bits(cube::BitVector(w->w.dimension(), m.center), center);
  });
}

l0_status l0_variance_exact(const l0_weight* w, double* out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    *out = split::variance_exact(w->w);
  });
}

l0_status l0_open_problem_explore(const l0_weight* w, double* lhs, double* rhs) {
  return guard([&] {
    need(w, "weight");
    need(lhs, "lhs");
    need(rhs, "rhs");
    const split::BandSums s = split::open_problem_explore(w->w);
    *lhs = s.lhs;
    *rhs = s.rhs;
  });
}

l0_status l0_certify_psi_upper_bound(const l0_weight* w, const l0_certify_options* options,
                                     l0_certify_result* out) {
  return guard([&] {
    need(w, "weight");
    need(options, "options");
    need(out, "out");
    const split::CertifyResult r = split::certify_psi_upper_bound(
        w->w, {options->trials, options->seed, options->n0, options->threads});
    *out = l0_certify_result{};
    out->adhoc_used = r.adhoc_used ? 1 : 0;
    out->a = r.a;
    out->b = r.b;
    out->c = r.c;
    out->ratio = r.ratio;
    out->trials = r.search.trials;
    out->degenerate_trials = r.search.degenerate;
    out->random_ratio = std::numeric_limits<double>::infinity();
    if (r.search.best) {
      out->has_random = 1;
      out->best_trial = r.search.best_trial;
      out->random_ratio = r.search.best->ratio;
      copy_bits(r.search.best->z, out->z);
    }
    out->adhoc_ratio = std::numeric_limits<double>::infinity();
    if (r.adhoc) {
      out->has_adhoc = 1;
      out->adhoc_case = r.adhoc->case_id;
      out->adhoc_ratio = r.adhoc->ratio;
      copy_bits(r.adhoc->s, out->s);
      copy_bits(r.adhoc->t, out->t);
    }
  });
}

l0_status l0_point_cloud_from_csv(const char* text, l0_point_cloud** out) {
  return guard([&] {
    need(text, "text");
    emit(out, io::point_cloud_from_csv(text));
  });
}

void l0_point_cloud_free(l0_point_cloud* cloud) { delete cloud; }

l0_status l0_point_cloud_info(const l0_point_cloud* cloud, unsigned* n, uint64_t* points) {
  return guard([&] {
    need(cloud, "cloud");
    if (n) *n = cloud->c.dimension();
    if (points) *points = cloud->c.size();
  });
}

l0_status l0_body_sample(const l0_body* body, uint64_t draws, uint64_t seed,
                         l0_point_cloud** out) {
  return guard([&] {
    need(body, "body");
    const sampler::ConvexBody& b = body->b;
    if (!b.bounds()) fail(ErrorCode::kInvalidArgument, "body has no bounding box");
    split::MembershipBody m{b.dimension(), b.bounds()->lo, b.bounds()->hi,
                            [&](std::span<const double> x) { return b.contains(x); }};
    emit(out, split::sample_body(m, draws, seed));
  });
}

l0_status l0_median_point(const l0_point_cloud* cloud, double* out) {
  return guard([&] {
    need(cloud, "cloud");
    need(out, "out");
    const std::vector<double> p = split::median_point(cloud->c);
    std::copy(p.begin(), p.end(), out);
  });
}

l0_status l0_orthant_weights(const l0_point_cloud* cloud, const double* p, double tolerance,
                             l0_weight** out, double* raw_error, int* remediated) {
  return guard([&] {
    need(cloud, "cloud");
    need(p, "p");
    split::OrthantWeights o =
        split::orthant_weights(cloud->c, {p, cloud->c.dimension()}, tolerance);
    if (raw_error) *raw_error = o.raw_error;
    if (remediated) *remediated = o.remediated ? 1 : 0;
    emit(out, std::move(*o.weight));
  });
}

// sampler

l0_status l0_body_box(unsigned n, const double* lo, const double* hi, l0_body** out) {
  return guard([&] {
    need(lo, "lo");
    need(hi, "hi");
    emit(out, sampler::ConvexBody::box({lo, lo + n}, {hi, hi + n}));
  });
}

l0_status l0_body_from_json(const char* json, l0_body** out) {
  return guard([&] {
    need(json, "json");
    emit(out, io::body_from_json(json));
  });
}

l0_status l0_body_oracle(unsigned n, l0_membership_fn contains, void* user, const double* lo,
                         const double* hi, const double* start, l0_body** out) {
  return guard([&] {
    need(reinterpret_cast<const void*>(contains), "contains");
    need(lo, "lo");
    need(hi, "hi");
    need(start, "start");
    sampler::Oracle o{[contains, user, n](std::span<const double> x) {
      return contains(x.data(), n, user) != 0;
    }};
    emit(out, sampler::ConvexBody::oracle(n, std::move(o), {{lo, lo + n}, {hi, hi + n}},
                                          {start, start + n}));
  });
}

void l0_body_free(l0_body* body) { delete body; }

l0_status l0_body_info(const l0_body* body, unsigned* n, int* kind, int* has_bounds) {
  return guard([&] {
    need(body, "body");
    if (n) *n = body->b.dimension();
    if (kind) *kind = static_cast<int>(body->b.kind());
    if (has_bounds) *has_bounds = body->b.bounds() ? 1 : 0;
  });
}

l0_status l0_body_contains(const l0_body* body, const double* x, int* out) {
  return guard([&] {
    need(body, "body");
    need(x, "x");
    need(out, "out");
    *out = body->b.contains({x, body->b.dimension()}) ? 1 : 0;
  });
}

l0_status l0_chord(const l0_body* body, const double* x, unsigned axis, double* lo, double* hi) {
  return guard([&] {
    need(body, "body");
    need(x, "x");
    need(lo, "lo");
    need(hi, "hi");
    const sampler::Interval iv = sampler::chord(body->b, {x, body->b.dimension()}, axis);
    *lo = iv.lo;
    *hi = iv.hi;
  });
}

l0_status l0_run_diagnostics(const l0_body* body, const l0_diag_options* options,
                             const double* start, l0_trajectory_fn trajectory, void* user,
                             l0_diag_summary* summary, l0_coord_diag* coords,
                             uint64_t* axis_counts) {
  return guard([&] {
    need(body, "body");
    need(options, "options");
    need(summary, "summary");
    need(coords, "coords");
    const unsigned n = body->b.dimension();
    sampler::DiagnosticsOptions o;
    if (options->chain != L0_CHAR && options->chain != L0_HIT_AND_RUN) {
      fail(ErrorCode::kInvalidArgument, "unknown chain kind");
    }
    o.chain = options->chain == L0_CHAR ? sampler::ChainKind::kChar
                                        : sampler::ChainKind::kHitAndRun;
    o.steps = options->steps;
    o.burn_in = options->burn_in;
    o.seed = options->seed;
    o.reference_steps = options->reference_steps;
    if (options->alpha > 0.0) o.alpha = options->alpha;
    if (start) o.start.assign(start, start + n);
    if (trajectory) {
      o.trajectory = [&](std::uint64_t step, std::span<const double> x) {
        trajectory(step, x.data(), n, user);
      };
    }
    const sampler::DiagnosticsReport r = sampler::run_diagnostics(body->b, o);
    summary->samples = r.samples;
    summary->degenerate_steps = r.degenerate_steps;
    summary->membership_violations = r.membership_violations;
    summary->reference_chain = r.reference_chain ? 1 : 0;
    summary->stationary = r.stationary ? 1 : 0;
    for (unsigned i = 0; i < n; ++i) {
      const auto& c = r.coordinates[i];
      coords[i] = {c.ks_statistic, c.tau_int, c.effective_n, c.p_value, c.mean};
      if (axis_counts) axis_counts[i] = r.axis_counts[i];
    }
  });
}

l0_status l0_transition_symmetry_test(unsigned m, uint64_t steps, uint64_t seed,
                                      l0_detailed_balance* out) {
  return guard([&] {
    need(out, "out");
    const sampler::DetailedBalanceReport r = sampler::transition_symmetry_test(m, steps, seed);
    *out = {r.cells_per_axis, r.steps, r.statistic, r.pairs, r.z, r.passed ? 1 : 0};
  });
}

}  // extern "C"
