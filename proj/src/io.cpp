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

#include "l0iso/io.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

#include "l0iso/error.hpp"

namespace l0iso::io {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed document: ") + e.what());
  }
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::kParse, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& v : j) {
    if (!v.is_number()) fail(ErrorCode::kParse, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

cube::VertexSet vertex_set_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    const auto n = doc.at("n").get<unsigned>();
    cube::VertexSet set(n);
    for (const json& m : doc.at("members")) {
      const cube::BitVector v = cube::BitVector::parse(m.get<std::string>());
      if (v.dimension() != n) fail(ErrorCode::kParse, "member length differs from n");
      set.insert(v);
    }
    return set;
  });
}

std::string vertex_set_to_json(const cube::VertexSet& set) {
  json members = json::array();
  set.for_each([&](std::uint32_t v) {
    members.push_back(cube::BitVector(set.dimension(), v).to_string());
  });
  return json{{"n", set.dimension()}, {"members", members}}.dump();
}

grid::GridSet grid_set_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    const grid::GridSpec spec{doc.at("n").get<unsigned>(), doc.at("k").get<unsigned>()};
    std::vector<std::vector<unsigned>> cells;
    for (const json& c : doc.at("cells")) cells.push_back(c.get<std::vector<unsigned>>());
    return grid::GridSet::from_cells(spec, cells);
  });
}

std::string grid_set_to_json(const grid::GridSet& set) {
  return json{{"n", set.spec().n}, {"k", set.spec().k}, {"cells", set.cells()}}.dump();
}

split::BalancedWeight weight_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    if (!doc.is_array() || doc.empty()) fail(ErrorCode::kParse, "weight file must be a non-empty array");
    unsigned n = 0;
    std::vector<split::WeightEntry> entries;
    for (const json& e : doc) {
      const cube::BitVector s = cube::BitVector::parse(e.at("s").get<std::string>());
      if (n == 0) n = s.dimension();
      if (s.dimension() != n) fail(ErrorCode::kParse, "weight entries of different lengths");
      entries.push_back({s.bits(), e.at("w").get<double>()});
    }
    return split::BalancedWeight(n, std::move(entries));
  });
}

std::string weight_to_json(const split::BalancedWeight& w) {
  json out = json::array();
  for (const auto& e : w.entries()) {
    out.push_back({{"s", cube::BitVector(w.dimension(), e.s).to_string()}, {"w", e.w}});
  }
  return out.dump();
}

split::PointCloud point_cloud_from_csv(std::string_view text) {
  std::vector<double> coords;
  std::vector<double> weights;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    std::vector<double> row;
    bool numeric = true;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      std::string field = line.substr(start, comma - start);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = b == std::string::npos ? "" : field.substr(b, e - b + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) numeric = false;
      row.push_back(v);
      start = comma + 1;
    }
    if (!numeric) {
      if (coords.empty() && weights.empty() && width == 0) continue;  // header
      fail(ErrorCode::kParse, "non-numeric field on line " + std::to_string(line_no));
    }
    if (row.size() < 2) fail(ErrorCode::kParse, "point rows need x_1..x_n and a weight");
    if (width == 0) width = row.size();
    if (row.size() != width) {
      fail(ErrorCode::kParse, "ragged point cloud at line " + std::to_string(line_no));
    }
    coords.insert(coords.end(), row.begin(), row.end() - 1);
    weights.push_back(row.back());
  }
  if (weights.empty()) fail(ErrorCode::kParse, "point cloud has no rows");
  return split::PointCloud(static_cast<unsigned>(width - 1), std::move(coords), std::move(weights));
}

sampler::ConvexBody body_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    if (doc.contains("box")) {
      return sampler::ConvexBody::box(number_list(doc["box"].at("lo"), "lo"),
                                      number_list(doc["box"].at("hi"), "hi"));
    }
    const json& rows = doc.at("A");
    if (!rows.is_array() || rows.empty()) fail(ErrorCode::kParse, "A must be a non-empty matrix");
    sampler::Polytope p;
    p.n = static_cast<unsigned>(rows[0].size());
    for (const json& r : rows) {
      const std::vector<double> row = number_list(r, "A row");
      if (row.size() != p.n) fail(ErrorCode::kParse, "A rows of different lengths");
      p.a.insert(p.a.end(), row.begin(), row.end());
    }
    p.b = number_list(doc.at("b"), "b");
    if (p.b.size() != rows.size()) fail(ErrorCode::kParse, "A and b row counts differ");
    std::optional<std::vector<double>> interior;
    if (doc.contains("interior")) interior = number_list(doc["interior"], "interior");
    std::optional<sampler::Box> bounds;
    if (doc.contains("lo") || doc.contains("hi")) {
      bounds = sampler::Box{number_list(doc.at("lo"), "lo"), number_list(doc.at("hi"), "hi")};
    }
    return sampler::ConvexBody::polytope(std::move(p), std::move(interior), std::move(bounds));
  });
}

}  // namespace l0iso::io
