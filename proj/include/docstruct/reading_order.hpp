// Copyright (c) 2026 docstruct Authors. All Rights Reserved.
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

#include <cstddef>
#include <span>
#include <vector>

#include "docstruct/geometry.hpp"

namespace docstruct {

enum class ThresholdMode { kFixed, kAuto };

/// Controls the Y-proximity threshold used by threshold-based (TB-YX)
/// sorting. In auto mode the threshold is auto_factor times the median
/// box height of the input.
struct OrderConfig {
  ThresholdMode mode = ThresholdMode::kAuto;
  double fixed_threshold = 0.0;  // pixels, used in kFixed mode
  double auto_factor = 0.5;      // multiplier on median box height in kAuto
};

/// Stable top-to-bottom, left-to-right order: lexicographic (y0, x0),
/// ties broken by input index. Returns a permutation of 0..n-1.
std::vector<std::size_t> sort_yx(std::span<const Box> boxes);

/// factor times the median of box heights; 0 for empty input. The median
/// of an even-count list is the mean of the two middle values.
double default_threshold(std::span<const Box> boxes, double factor);

/// Resolves the pixel threshold for a box set under the given config.
double resolve_threshold(std::span<const Box> boxes,
                         const OrderConfig& config);

/// Partitions box indices into text lines. Boxes are scanned in
/// (y0, x0, index) order; a box joins the current line when the distance
/// between its y-center and the y-center of the line's first (anchor) box
/// is strictly less than th, otherwise it starts a new line.
std::vector<std::vector<std::size_t>> group_lines(std::span<const Box> boxes,
                                                  double th);

/// Threshold-based YX sort: boxes are grouped into lines (see group_lines),
/// lines are kept in anchor order, and each line is sorted by (x0, index).
/// With th = 0 this degenerates to sort_yx.
std::vector<std::size_t> sort_tb_yx(std::span<const Box> boxes,
                                    const OrderConfig& config = {});

}  // namespace docstruct
