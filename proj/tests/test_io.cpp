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

#include <gtest/gtest.h>

#include "l0iso/error.hpp"
#include "l0iso/io.hpp"

namespace {

using namespace l0iso;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

TEST(Json, GridSetRoundTrip) {
  const auto g = io::grid_set_from_json(R"({"n":2,"k":3,"cells":[[2,1],[0,0]]})");
  EXPECT_EQ(g.cardinality(), 2u);
  EXPECT_EQ(io::grid_set_from_json(io::grid_set_to_json(g)), g);
}

TEST(Json, VertexSetRoundTrip) {
  const auto v = io::vertex_set_from_json(R"({"n":3,"members":["101","000"]})");
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(io::vertex_set_from_json(io::vertex_set_to_json(v)), v);
}

TEST(Json, WeightRoundTrip) {
  const auto w = io::weight_from_json(R"([{"s":"10","w":0.5},{"s":"01","w":0.5}])");
  EXPECT_EQ(w.dimension(), 2u);
  EXPECT_TRUE(w.is_balanced());
  EXPECT_EQ(io::weight_from_json(io::weight_to_json(w)).entries(), w.entries());
}

TEST(Json, BodyKinds) {
  const auto box = io::body_from_json(R"({"box":{"lo":[0,0],"hi":[1,2]}})");
  EXPECT_NE(box.as_box(), nullptr);
  const auto poly = io::body_from_json(R"({"A":[[1,0],[0,1],[-1,-1]],"b":[1,1,0.5]})");
  EXPECT_NE(poly.as_polytope(), nullptr);
  EXPECT_EQ(poly.dimension(), 2u);
}

TEST(Json, MalformedInputIsParseError) {
  EXPECT_EQ(code_of([] { io::grid_set_from_json("{"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::grid_set_from_json(R"({"n":2,"k":3})"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::weight_from_json(R"([{"s":"1x","w":1}])"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { io::body_from_json(R"({"A":[[1,0],[1]],"b":[1,1]})"); }),
            ErrorCode::kParse);
}

TEST(Csv, CommentsHeaderAndWeights) {
  const auto c = io::point_cloud_from_csv("# cloud\nx,y,w\n0.1,0.2,1\n0.3,0.4,3\n");
  EXPECT_EQ(c.dimension(), 2u);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c.weight(1), 0.75);
  EXPECT_EQ(code_of([] { io::point_cloud_from_csv("1,2,3\n1,2\n"); }), ErrorCode::kParse);
}

}  // namespace
