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

#include "docstruct/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "docstruct/error.hpp"

namespace docstruct {

bool is_valid(const Box& b) {
  return std::isfinite(b.x0) && std::isfinite(b.y0) && std::isfinite(b.x1) &&
         std::isfinite(b.y1) && b.x0 <= b.x1 && b.y0 <= b.y1;
}

void validate_box(const Box& b) {
  if (!is_valid(b)) {
    throw ValidationError("invalid box [" + std::to_string(b.x0) + ", " +
                          std::to_string(b.y0) + ", " + std::to_string(b.x1) +
                          ", " + std::to_string(b.y1) +
                          "]: coordinates must be finite with x0 <= x1 and "
                          "y0 <= y1");
  }
}

double intersection_area(const Box& a, const Box& b) {
  const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double iou(const Box& a, const Box& b) {
  validate_box(a);
  validate_box(b);
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

}  // namespace docstruct
