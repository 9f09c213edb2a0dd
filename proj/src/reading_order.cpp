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

#include "docstruct/reading_order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "docstruct/error.hpp"

namespace docstruct {

namespace {

void validate_boxes(std::span<const Box> boxes) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (!is_valid(boxes[i])) {
      throw ValidationError("box " + std::to_string(i) +
                            " violates box invariants");
    }
  }
}

void validate_config(const OrderConfig& config) {
  if (!(config.fixed_threshold >= 0.0) ||
      !std::isfinite(config.fixed_threshold)) {
    throw ValidationError("fixed_threshold must be finite and >= 0");
  }
  if (!(config.auto_factor > 0.0) || !std::isfinite(config.auto_factor)) {
    throw ValidationError("auto_factor must be finite and > 0");
  }
}

// (y0, x0, index) scan order used both by sort_yx and line grouping.
std::vector<std::size_t> yx_order(std::span<const Box> boxes) {
  std::vector<std::size_t> order(boxes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) {
              return std::tie(boxes[a].y0, boxes[a].x0, a) <
                     std::tie(boxes[b].y0, boxes[b].x0, b);
            });
  return order;
}

}  // namespace

std::vector<std::size_t> sort_yx(std::span<const Box> boxes) {
  validate_boxes(boxes);
  return yx_order(boxes);
}

double default_threshold(std::span<const Box> boxes, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ValidationError("threshold factor must be finite and > 0");
  }
  validate_boxes(boxes);
  if (boxes.empty()) return 0.0;
  std::vector<double> heights;
  heights.reserve(boxes.size());
  for (const Box& b : boxes) heights.push_back(b.height());
  std::sort(heights.begin(), heights.end());
  const std::size_t n = heights.size();
  const double median = (n % 2 == 1)
                            ? heights[n / 2]
                            : 0.5 * (heights[n / 2 - 1] + heights[n / 2]);
  return factor * median;
}

double resolve_threshold(std::span<const Box> boxes,
                         const OrderConfig& config) {
  validate_config(config);
  if (config.mode == ThresholdMode::kFixed) return config.fixed_threshold;
  return default_threshold(boxes, config.auto_factor);
}

std::vector<std::vector<std::size_t>> group_lines(std::span<const Box> boxes,
                                                  double th) {
  if (!(th >= 0.0) || !std::isfinite(th)) {
    throw ValidationError("line threshold must be finite and >= 0");
  }
  validate_boxes(boxes);
  std::vector<std::vector<std::size_t>> lines;
  double anchor_center = 0.0;
  for (std::size_t idx : yx_order(boxes)) {
    const double center = boxes[idx].y_center();
    if (!lines.empty() && std::abs(center - anchor_center) < th) {
      lines.back().push_back(idx);
    } else {
      lines.push_back({idx});
      anchor_center = center;
    }
  }
  return lines;
}

std::vector<std::size_t> sort_tb_yx(std::span<const Box> boxes,
                                    const OrderConfig& config) {
  const double th = resolve_threshold(boxes, config);
  std::vector<std::size_t> result;
  result.reserve(boxes.size());
  for (std::vector<std::size_t>& line : group_lines(boxes, th)) {
    std::sort(line.begin(), line.end(),
              [&](std::size_t a, std::size_t b) {
                return std::tie(boxes[a].x0, a) < std::tie(boxes[b].x0, b);
              });
    result.insert(result.end(), line.begin(), line.end());
  }
  return result;
}

}  // namespace docstruct
