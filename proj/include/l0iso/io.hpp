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

#include <string>
#include <string_view>

#include "l0iso/char_sampler.hpp"
#include "l0iso/gridset.hpp"
#include "l0iso/hypercube.hpp"
#include "l0iso/splitting.hpp"

// File formats. Parse failures throw Error(kParse).
//   vertex set   {"n": 4, "members": ["0101", ...]}
//   grid set     {"n": 2, "k": 3, "cells": [[0, 1], ...]}
//   weight       [{"s": "0101", "w": 0.25}, ...]
//   point cloud  CSV rows x_1,...,x_n,weight ('#' comments, optional header)
//   body         {"box": {"lo": [...], "hi": [...]}} or
//                {"A": [[...], ...], "b": [...], "interior": [...], "lo": [...], "hi": [...]}
//                with "interior", "lo" and "hi" optional
namespace l0iso::io {

cube::VertexSet vertex_set_from_json(std::string_view text);
std::string vertex_set_to_json(const cube::VertexSet& set);

grid::GridSet grid_set_from_json(std::string_view text);
std::string grid_set_to_json(const grid::GridSet& set);

split::BalancedWeight weight_from_json(std::string_view text);
std::string weight_to_json(const split::BalancedWeight& w);

split::PointCloud point_cloud_from_csv(std::string_view text);

sampler::ConvexBody body_from_json(std::string_view text);

}  // namespace l0iso::io
