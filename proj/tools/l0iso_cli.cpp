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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "l0iso/l0iso.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(l0_status s, const char* what) {
  if (s != L0_OK) {
    throw LibraryError(std::string(what) + ": " + l0_status_name(s) + ": " + l0_last_error());
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GridPtr = std::unique_ptr<l0_grid_set, Deleter<l0_grid_set, l0_grid_set_free>>;
using VertexPtr = std::unique_ptr<l0_vertex_set, Deleter<l0_vertex_set, l0_vertex_set_free>>;
using WeightPtr = std::unique_ptr<l0_weight, Deleter<l0_weight, l0_weight_free>>;
using BodyPtr = std::unique_ptr<l0_body, Deleter<l0_body, l0_body_free>>;
using CloudPtr = std::unique_ptr<l0_point_cloud, Deleter<l0_point_cloud, l0_point_cloud_free>>;

std::string take_string(char* s) {
  std::string out(s);
  l0_free_string(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LibraryError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LibraryError("cannot write " + path);
  out << text;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

std::string rational(uint64_t num, uint64_t den, bool infinite) {
  if (infinite) return "inf";
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

json report_head(const std::string& command, json config, std::optional<uint64_t> seed) {
  json r;
  r["tool"] = "l0iso";
  r["version"] = l0_version();
  r["command"] = command;
  r["config"] = std::move(config);
  r["seed"] = seed ? json(*seed) : json(nullptr);
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GridPtr grid_from(const std::string& text) {
  l0_grid_set* g = nullptr;
  check(l0_grid_set_from_json(text.c_str(), &g), "grid set");
  return GridPtr(g);
}

json grid_json(const l0_grid_set* g) {
  char* s = nullptr;
  check(l0_grid_set_to_json(g, &s), "grid set");
  return json::parse(take_string(s));
}

uint64_t cardinality(const l0_grid_set* g) {
  uint64_t c = 0;
  check(l0_grid_set_cardinality(g, &c), "cardinality");
  return c;
}

// psi-exact

struct PsiArgs {
  unsigned n = 2, k = 2, threads = 0;
  std::string output;
};

int cmd_psi_exact(const PsiArgs& a) {
  l0_psi_result r{};
  l0_grid_set* w = nullptr;
  check(l0_psi_grid_exact(a.n, a.k, a.threads, &r, &w), "psi_grid_exact");
  GridPtr witness(w);
  json rep = report_head("psi-exact", {{"n", a.n}, {"k", a.k}}, std::nullopt);
  json res;
  res["psi"] = rational(r.num, r.den, r.infinite);
  res["value"] = r.infinite ? json("inf") : json(double(r.num) / double(r.den));
  res["boundary"] = r.boundary;
  res["residual"] = r.residual;
  res["subsets_visited"] = r.subsets_visited;
  res["witness"] = grid_json(witness.get());
  rep["result"] = std::move(res);
  write_text(a.output, dump(rep));
  return kExitOk;
}

// construct

struct ConstructArgs {
  unsigned n = 4;
  bool members = false;
  std::string output;
};

json members_of(const l0_vertex_set* v) {
  char* s = nullptr;
  check(l0_vertex_set_to_json(v, &s), "vertex set");
  return json::parse(take_string(s))["members"];
}

int cmd_construct(const ConstructArgs& a) {
  l0_halving_counts h{};
  check(l0_halving_counts_compute(a.n, &h), "halving counts");
  const double ratio = double(h.ratio_num) / double(h.ratio_den);
  const double bound = 4.0 * std::sqrt(8.0 / M_PI) + 1.0;
  json rep = report_head("construct", {{"n", a.n}, {"members", a.members}}, std::nullopt);
  json res;
  res["s1"] = h.s1;
  res["s2"] = h.s2;
  res["s3"] = h.s3;
  res["ratio"] = rational(h.ratio_num, h.ratio_den, false);
  res["ratio_value"] = ratio;
  res["ratio_sqrt_n"] = ratio * std::sqrt(double(a.n));
  json checks;
  checks["ratio_sqrt_n_bound"] = bound;
  checks["ratio_sqrt_n_within_bound"] = ratio * std::sqrt(double(a.n)) <= bound;
  bool ok = true;
  if (a.n <= 20) {
    l0_vertex_set *s1 = nullptr, *s2 = nullptr, *s3 = nullptr;
    check(l0_halving_construction(a.n, &s1, &s2, &s3), "halving construction");
    VertexPtr p1(s1), p2(s2), p3(s3);
    int disjoint = 0;
    check(l0_vertex_sets_axis_disjoint(s1, s2, &disjoint), "axis disjointness");
    checks["axis_disjoint"] = disjoint != 0;
    ok = disjoint != 0;
    if (a.members) {
      res["members"] = {{"s1", members_of(s1)}, {"s2", members_of(s2)}, {"s3", members_of(s3)}};
    }
  } else {
    checks["axis_disjoint"] = nullptr;
  }
  rep["result"] = std::move(res);
  rep["checks"] = std::move(checks);
  write_text(a.output, dump(rep));
  return ok ? kExitOk : kExitViolation;
}

// hamming-scan

struct ScanArgs {
  unsigned n_max = 200, log_points = 32, threads = 0;
  double x = 1.0;
  std::string format = "csv";
  std::string output;
};

int cmd_hamming_scan(const ScanArgs& a) {
  std::string rows;
  l0_scan_summary s{};
  auto sink = [](const l0_scan_row* r, void* user) {
    std::string& out = *static_cast<std::string*>(user);
    out += std::to_string(r->n) + ',' + fmt(r->p) + ',' + std::to_string(r->k) + ',' +
           fmt(r->ratio) + ',' + fmt(r->scaled) + '\n';
  };
  const bool csv = a.format == "csv";
  check(l0_binom_bound_scan(a.n_max, a.log_points, a.threads, csv ? +sink : nullptr, &rows, &s,
                            nullptr),
        "binom_bound_scan");
  unsigned k1 = 0, k2 = 0;
  check(l0_growth_thresholds(s.argmin.n, s.argmin.p, a.x, 0, &k1, &k2), "growth thresholds");
  const json config = {{"nmax", a.n_max}, {"pgrid", a.log_points + 1}, {"x", a.x}};
  if (csv) {
    std::string out = "# l0iso " + std::string(l0_version()) + " hamming-scan\n";
    out += "# config " + config.dump() + "\n# seed none\n";
    out += "n,p,k,ratio,scaled\n" + rows;
    out += "# rows " + std::to_string(s.rows) + "\n";
    out += "# c_hat " + fmt(s.c_hat) + " at n=" + std::to_string(s.argmin.n) +
           " p=" + fmt(s.argmin.p) + " k=" + std::to_string(s.argmin.k) + "\n";
    out += "# growth n=" + std::to_string(s.argmin.n) + " p=" + fmt(s.argmin.p) +
           " x=" + fmt(a.x) + " k1=" + std::to_string(k1) + " k2=" + std::to_string(k2) + "\n";
    write_text(a.output, out);
    return kExitOk;
  }
  json rep = report_head("hamming-scan", config, std::nullopt);
  rep["result"] = {
      {"rows", s.rows},
      {"c_hat", s.c_hat},
      {"argmin", {{"n", s.argmin.n}, {"p", s.argmin.p}, {"k", s.argmin.k},
                  {"ratio", number(s.argmin.ratio)}}},
      {"growth", {{"n", s.argmin.n}, {"p", s.argmin.p}, {"x", a.x}, {"k1", k1}, {"k2", k2}}}};
  write_text(a.output, dump(rep));
  return kExitOk;
}

// shake

struct ShakeArgs {
  std::string input, partner, direction = "plus", output, report;
};

l0_direction parse_direction(const std::string& d) { return d == "plus" ? L0_PLUS : L0_MINUS; }

GridPtr residual_of(const l0_grid_set* s1) {
  unsigned n = 0, k = 0;
  check(l0_grid_set_spec(s1, &n, &k), "grid spec");
  l0_grid_set* b = nullptr;
  check(l0_grid_boundary(s1, &b), "boundary");
  GridPtr boundary(b);
  const json taken = grid_json(s1)["cells"];
  const json edge = grid_json(boundary.get())["cells"];
  json cells = json::array();
  std::vector<unsigned> idx(n, 0);
  uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= k;
  for (uint64_t c = 0; c < total; ++c) {
    uint64_t r = c;
    json cell = json::array();
    for (unsigned i = 0; i < n; ++i) {
      idx[i] = unsigned(r % k);
      r /= k;
      cell.push_back(idx[i]);
    }
    if (std::find(taken.begin(), taken.end(), cell) == taken.end() &&
        std::find(edge.begin(), edge.end(), cell) == edge.end()) {
      cells.push_back(cell);
    }
  }
  return grid_from(json{{"n", n}, {"k", k}, {"cells", cells}}.dump());
}

// Cell (a_1, ..., a_n) maps to (k-1-a_1, ..., k-1-a_n).
GridPtr reflect(const l0_grid_set* g) {
  json doc = grid_json(g);
  const unsigned k = doc["k"].get<unsigned>();
  for (json& cell : doc["cells"]) {
    for (json& a : cell) a = k - 1 - a.get<unsigned>();
  }
  return grid_from(doc.dump());
}

bool volumes_equal(const l0_grid_set* a, const l0_grid_set* b) {
  uint64_t an = 0, ad = 0, bn = 0, bd = 0;
  check(l0_grid_volume(a, &an, &ad), "volume");
  check(l0_grid_volume(b, &bn, &bd), "volume");
  return an == bn && ad == bd;
}

int cmd_shake(const ShakeArgs& a) {
  const l0_direction dir = parse_direction(a.direction);
  const l0_direction opposite = dir == L0_PLUS ? L0_MINUS : L0_PLUS;
  GridPtr s1 = grid_from(read_file(a.input));
  GridPtr s2 = a.partner.empty() ? residual_of(s1.get()) : grid_from(read_file(a.partner));

  l0_grid_set *t1 = nullptr, *t2 = nullptr, *twice = nullptr, *b0 = nullptr, *b1 = nullptr;
  check(l0_grid_full_shake(s1.get(), dir, &t1), "full shake");
  GridPtr shaken(t1);
  check(l0_grid_full_shake(s2.get(), opposite, &t2), "full shake");
  GridPtr partner(t2);
  check(l0_grid_full_shake(shaken.get(), dir, &twice), "full shake");
  GridPtr double_shaken(twice);
  check(l0_grid_boundary(s1.get(), &b0), "boundary");
  GridPtr before(b0);
  check(l0_grid_boundary(shaken.get(), &b1), "boundary");
  GridPtr after(b1);

  int disjoint_before = 0, disjoint_after = 0, anchored = 0;
  check(l0_grid_axis_disjoint(s1.get(), s2.get(), &disjoint_before), "axis disjointness");
  check(l0_grid_axis_disjoint(shaken.get(), partner.get(), &disjoint_after), "axis disjointness");
  GridPtr probe = dir == L0_PLUS ? nullptr : reflect(double_shaken.get());
  check(l0_grid_is_anchored(probe ? probe.get() : double_shaken.get(), &anchored), "anchored");

  const uint64_t boundary_before = cardinality(before.get());
  const uint64_t boundary_after = cardinality(after.get());
  json checks;
  checks["volume_preserved"] = volumes_equal(s1.get(), shaken.get());
  checks["axis_disjoint_preserved"] = !disjoint_before || disjoint_after;
  checks["boundary_non_increasing"] = boundary_after <= boundary_before;
  checks["double_shake_anchored"] = anchored != 0;
  bool ok = true;
  for (const auto& [key, value] : checks.items()) ok = ok && value.get<bool>();

  json rep = report_head("shake",
                         {{"input", a.input},
                          {"partner", a.partner.empty() ? json("residual") : json(a.partner)},
                          {"direction", a.direction},
                          {"output", a.output}},
                         std::nullopt);
  rep["result"] = {{"cardinality", cardinality(s1.get())},
                   {"boundary_before", boundary_before},
                   {"boundary_after", boundary_after},
                   {"partner_axis_disjoint", disjoint_before != 0}};
  rep["checks"] = std::move(checks);
  if (!a.output.empty()) write_text(a.output, grid_json(shaken.get()).dump() + "\n");
  write_text(a.report, dump(rep));
  return ok ? kExitOk : kExitViolation;
}

// weights shared by split and explore

struct WeightSource {
  std::string weight_file;
  unsigned generate = 0;
  unsigned pairs = 8;
  std::string generator = "ipf";
  uint64_t seed = 1;
};

WeightPtr load_weight(const WeightSource& w) {
  l0_weight* out = nullptr;
  if (!w.weight_file.empty()) {
    check(l0_weight_from_json(read_file(w.weight_file).c_str(), &out), "weight");
  } else if (w.generator == "uniform") {
    check(l0_weight_uniform(w.generate, &out), "weight");
  } else {
    check(l0_weight_random(w.generate, w.pairs, w.generator == "antipodal", w.seed, &out),
          "weight");
  }
  return WeightPtr(out);
}

json weight_config(const WeightSource& w) {
  if (!w.weight_file.empty()) return {{"weight", w.weight_file}};
  return {{"generate", w.generate}, {"generator", w.generator}, {"pairs", w.pairs}};
}

// split

struct SplitArgs {
  WeightSource weight;
  std::string body;
  uint64_t draws = 20000;
  double balance_tolerance = 1e-2;
  uint64_t trials = 10000;
  uint64_t seed = 1;
  unsigned n0 = 16, threads = 0;
  std::string output;
};

int cmd_split(const SplitArgs& a) {
  json config = a.body.empty() ? weight_config(a.weight) : json{{"body", a.body}};
  config["trials"] = a.trials;
  config["n0"] = a.n0;
  WeightPtr w;
  json body_info;
  if (!a.body.empty()) {
    l0_body* b = nullptr;
    check(l0_body_from_json(read_file(a.body).c_str(), &b), "body");
    BodyPtr body(b);
    l0_point_cloud* c = nullptr;
    check(l0_body_sample(body.get(), a.draws, a.seed, &c), "body sample");
    CloudPtr cloud(c);
    unsigned n = 0;
    check(l0_point_cloud_info(cloud.get(), &n, nullptr), "point cloud");
    std::vector<double> median(n);
    check(l0_median_point(cloud.get(), median.data()), "median");
    l0_weight* ow = nullptr;
    double raw = 0.0;
    int remediated = 0;
    check(l0_orthant_weights(cloud.get(), median.data(), a.balance_tolerance, &ow, &raw,
                             &remediated),
          "orthant weights");
    w.reset(ow);
    config["draws"] = a.draws;
    config["balance_tolerance"] = a.balance_tolerance;
    body_info = {{"median", median}, {"raw_balance_error", raw}, {"remediated", remediated != 0}};
  } else {
    w = load_weight(a.weight);
  }
  unsigned n = 0;
  check(l0_weight_info(w.get(), &n, nullptr, nullptr), "weight");
  const l0_certify_options opts{a.trials, a.seed, a.n0, a.threads};
  l0_certify_result r{};
  check(l0_certify_psi_upper_bound(w.get(), &opts, &r), "certify");

  json rep = report_head("split", config, a.seed);
  json cert;
  cert["n"] = n;
  cert["z"] = r.has_random ? json(r.z) : json(nullptr);
  cert["A"] = r.a;
  cert["B"] = r.b;
  cert["C"] = r.c;
  cert["ratio"] = number(r.ratio);
  cert["ratio_sqrt_n"] = number(r.ratio * std::sqrt(double(n)));
  cert["trials"] = r.trials;
  cert["degenerate_trials"] = r.degenerate_trials;
  cert["best_trial"] = r.has_random ? json(r.best_trial) : json(nullptr);
  cert["seed"] = a.seed;
  cert["adhoc_used"] = r.adhoc_used != 0;
  if (r.has_adhoc) {
    cert["adhoc"] = {{"case", r.adhoc_case}, {"s", r.s}, {"t", r.t},
                     {"ratio", number(r.adhoc_ratio)}};
  }
  if (!body_info.is_null()) cert["body"] = std::move(body_info);
  rep["result"] = std::move(cert);
  const bool masses_ok = std::fabs(r.a + r.b + r.c - 1.0) < 1e-9;
  rep["checks"] = {{"certificate_found", std::isfinite(r.ratio)}, {"masses_sum_to_one", masses_ok}};
  write_text(a.output, dump(rep));
  return std::isfinite(r.ratio) && masses_ok ? kExitOk : kExitViolation;
}

// explore

struct ExploreArgs {
  WeightSource weight;
  std::vector<std::string> centers;
  std::string output;
};

int cmd_explore(const ExploreArgs& a) {
  WeightPtr w = load_weight(a.weight);
  unsigned n = 0;
  uint64_t support = 0;
  double balance = 0.0;
  check(l0_weight_info(w.get(), &n, &support, &balance), "weight");
  double lhs = 0.0, rhs = 0.0, variance = 0.0, swmax = 0.0;
  char center[L0_BITS_CAPACITY] = {};
  check(l0_open_problem_explore(w.get(), &lhs, &rhs), "open problem");
  check(l0_variance_exact(w.get(), &variance), "variance");
  check(l0_small_weight_max(w.get(), &swmax, center), "small weight max");
  json sums = json::array();
  for (const std::string& s : a.centers) {
    double v = 0.0;
    check(l0_small_weight_sum(w.get(), s.c_str(), &v), "small weight sum");
    sums.push_back({{"center", s}, {"value", v}});
  }
  json config = weight_config(a.weight);
  config["centers"] = a.centers;
  json rep = report_head("explore", config, a.weight.weight_file.empty()
                                                ? std::optional<uint64_t>(a.weight.seed)
                                                : std::nullopt);
  rep["result"] = {{"n", n},
                   {"support", support},
                   {"balance_error", balance},
                   {"band_sums", {{"lhs", lhs}, {"rhs", rhs}}},
                   {"small_weight_max", {{"value", swmax}, {"center", center}}},
                   {"small_weight_sums", sums},
                   {"variance", variance}};
  const bool balanced = balance <= 1e-9;
  const bool sw_ok = swmax <= 0.75 + 1e-12;
  const bool var_ok = variance <= 0.25;
  rep["checks"] = {{"balanced", balanced},
                   {"small_weight_at_most_3_4", sw_ok},
                   {"variance_at_most_1_4", var_ok}};
  write_text(a.output, dump(rep));
  return balanced && sw_ok && var_ok ? kExitOk : kExitViolation;
}

// sample

struct SampleArgs {
  std::string body, chain = "char", trajectory, output;
  uint64_t steps = 100000, burn_in = 1000, seed = 1, reference_steps = 0;
  double alpha = 0.01;
};

int cmd_sample(const SampleArgs& a) {
  l0_body* b = nullptr;
  check(l0_body_from_json(read_file(a.body).c_str(), &b), "body");
  BodyPtr body(b);
  unsigned n = 0;
  check(l0_body_info(body.get(), &n, nullptr, nullptr), "body");
  l0_diag_options opts{a.chain == "char" ? L0_CHAR : L0_HIT_AND_RUN,
                       a.steps, a.burn_in, a.seed, a.reference_steps, a.alpha};
  std::ofstream traj;
  if (!a.trajectory.empty()) {
    traj.open(a.trajectory, std::ios::binary);
    if (!traj) throw LibraryError("cannot write " + a.trajectory);
    traj << "step";
    for (unsigned i = 1; i <= n; ++i) traj << ",x" << i;
    traj << '\n';
  }
  auto writer = [](uint64_t step, const double* x, unsigned dim, void* user) {
    std::ofstream& out = *static_cast<std::ofstream*>(user);
    char buf[32];
    out << step;
    for (unsigned i = 0; i < dim; ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", x[i]);
      out << buf;
    }
    out << '\n';
  };
  l0_diag_summary s{};
  std::vector<l0_coord_diag> coords(n);
  std::vector<uint64_t> axis(n);
  check(l0_run_diagnostics(body.get(), &opts, nullptr, traj.is_open() ? +writer : nullptr, &traj,
                           &s, coords.data(), axis.data()),
        "diagnostics");
  json rep = report_head("sample",
                         {{"body", a.body},
                          {"chain", a.chain},
                          {"steps", a.steps},
                          {"burnin", a.burn_in},
                          {"reference_steps", a.reference_steps},
                          {"alpha", a.alpha},
                          {"trajectory", a.trajectory}},
                         a.seed);
  json per = json::array();
  for (unsigned i = 0; i < n; ++i) {
    per.push_back({{"axis", i + 1},
                   {"ks_statistic", coords[i].ks_statistic},
                   {"tau_int", coords[i].tau_int},
                   {"effective_n", coords[i].effective_n},
                   {"p_value", coords[i].p_value},
                   {"mean", coords[i].mean},
                   {"axis_moves", axis[i]}});
  }
  rep["result"] = {{"samples", s.samples},
                   {"degenerate_steps", s.degenerate_steps},
                   {"reference_chain", s.reference_chain != 0},
                   {"coordinates", per},
                   {"stationary", s.stationary != 0}};
  rep["checks"] = {{"membership_violations", s.membership_violations}};
  write_text(a.output, dump(rep));
  return s.membership_violations == 0 ? kExitOk : kExitViolation;
}

void add_weight_options(CLI::App* cmd, WeightSource& w) {
  auto* file = cmd->add_option("--weight", w.weight_file, "Balanced weight JSON file");
  auto* gen = cmd->add_option("--generate", w.generate, "Generate a weight on n coordinates")
                  ->check(CLI::Range(1u, 24u));
  file->excludes(gen);
  cmd->add_option("--generator", w.generator, "uniform, ipf or antipodal")
      ->check(CLI::IsMember({"uniform", "ipf", "antipodal"}));
  cmd->add_option("--pairs", w.pairs, "Complementary support pairs for random weights");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l0iso: l0-isoperimetry on grids, hypercubes and convex bodies"};
  app.set_version_flag("--version", std::string(l0_version()));
  app.require_subcommand(1, 1);

  PsiArgs psi;
  auto* c_psi = app.add_subcommand("psi-exact", "Exhaustive grid isoperimetric ratio");
  c_psi->add_option("--n", psi.n, "Dimension")->required();
  c_psi->add_option("--k", psi.k, "Cells per axis")->required();
  c_psi->add_option("--threads", psi.threads, "Worker threads (0: hardware)");
  c_psi->add_option("-o,--output", psi.output, "Report path (default stdout)");

  ConstructArgs con;
  auto* c_con = app.add_subcommand("construct", "Halving construction on the hypercube");
  c_con->add_option("--n", con.n, "Dimension")->required();
  c_con->add_flag("--members", con.members, "List the members of S1, S2, S3");
  c_con->add_option("-o,--output", con.output, "Report path (default stdout)");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("hamming-scan", "Binomial boundary ratio scan");
  c_scan->add_option("--nmax", scan.n_max, "Largest n")->check(CLI::Range(2u, 100000u));
  c_scan->add_option("--pgrid", scan.log_points, "Log-spaced p values per n (plus 1/(4n))")
      ->check(CLI::Range(2u, 10000u));
  c_scan->add_option("--x", scan.x, "Growth factor for the threshold report")
      ->check(CLI::PositiveNumber);
  c_scan->add_option("--format", scan.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  c_scan->add_option("--threads", scan.threads, "Worker threads (0: hardware)");
  c_scan->add_option("-o,--output", scan.output, "Output path (default stdout)");

  ShakeArgs sh;
  auto* c_sh = app.add_subcommand("shake", "Full shake of a grid set with invariant checks");
  c_sh->add_option("file", sh.input, "Grid set JSON")->required()->check(CLI::ExistingFile);
  c_sh->add_option("--partner", sh.partner, "Grid set shaken the opposite way")
      ->check(CLI::ExistingFile);
  c_sh->add_option("--direction", sh.direction, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  c_sh->add_option("-o,--output", sh.output, "Write the shaken grid set here");
  c_sh->add_option("--report", sh.report, "Report path (default stdout)");

  SplitArgs sp;
  auto* c_sp = app.add_subcommand("split", "Splitting-plane certificate for a balanced weight");
  add_weight_options(c_sp, sp.weight);
  auto* body_opt =
      c_sp->add_option("--body", sp.body, "Convex body JSON")->check(CLI::ExistingFile);
  body_opt->excludes("--weight")->excludes("--generate");
  c_sp->add_option("--draws", sp.draws, "Rejection samples drawn from the body");
  c_sp->add_option("--balance-tolerance", sp.balance_tolerance,
                   "Largest orthant imbalance repaired by proportional fitting");
  c_sp->add_option("--trials", sp.trials, "Random split trials");
  c_sp->add_option("--seed", sp.seed, "Seed");
  c_sp->add_option("--n0", sp.n0, "Dimension below which the ad-hoc branch is tried");
  c_sp->add_option("--threads", sp.threads, "Worker threads (0: hardware)");
  c_sp->add_option("-o,--output", sp.output, "Certificate path (default stdout)");

  ExploreArgs ex;
  auto* c_ex = app.add_subcommand("explore", "Band sums, small-weight and variance of a weight");
  add_weight_options(c_ex, ex.weight);
  c_ex->add_option("--seed", ex.weight.seed, "Seed for generated weights");
  c_ex->add_option("--center", ex.centers, "Extra centers for the small-weight sum");
  c_ex->add_option("-o,--output", ex.output, "Report path (default stdout)");

  SampleArgs sa;
  auto* c_sa = app.add_subcommand("sample", "Coordinate Hit-and-Run with stationarity diagnostics");
  c_sa->add_option("--body", sa.body, "Convex body JSON")->required()->check(CLI::ExistingFile);
  c_sa->add_option("--chain", sa.chain, "char or har")->check(CLI::IsMember({"char", "har"}));
  c_sa->add_option("--steps", sa.steps, "Total steps including burn-in");
  c_sa->add_option("--burnin", sa.burn_in, "Burn-in steps");
  c_sa->add_option("--reference-steps", sa.reference_steps, "Reference chain length (0: same)");
  c_sa->add_option("--alpha", sa.alpha, "KS significance level");
  c_sa->add_option("--seed", sa.seed, "Seed");
  c_sa->add_option("--trajectory", sa.trajectory, "Write post-burn-in states as CSV");
  c_sa->add_option("-o,--output", sa.output, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*c_psi) return cmd_psi_exact(psi);
    if (*c_con) return cmd_construct(con);
    if (*c_scan) return cmd_hamming_scan(scan);
    if (*c_sh) return cmd_shake(sh);
    if (*c_sp) {
      if (sp.body.empty() && sp.weight.weight_file.empty() && sp.weight.generate == 0) {
        std::cerr << "split: one of --weight, --generate or --body is required\n";
        return kExitUsage;
      }
      return cmd_split(sp);
    }
    if (*c_ex) {
      if (ex.weight.weight_file.empty() && ex.weight.generate == 0) {
        std::cerr << "explore: one of --weight or --generate is required\n";
        return kExitUsage;
      }
      return cmd_explore(ex);
    }
    if (*c_sa) return cmd_sample(sa);
  } catch (const LibraryError& e) {
    std::cerr << "l0iso: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "l0iso: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
