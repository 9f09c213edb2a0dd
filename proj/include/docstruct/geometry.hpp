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

namespace docstruct {

/// Axis-aligned rectangle in pixel coordinates. Origin is top-left,
/// y grows downward; x0 <= x1 and y0 <= y1 with all values finite.
struct Box {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double x_center() const { return 0.5 * (x0 + x1); }
  double y_center() const { return 0.5 * (y0 + y1); }

  bool operator==(const Box&) const = default;
};

bool is_valid(const Box& b);

/// Throws ValidationError when the box violates its invariants.
void validate_box(const Box& b);

double intersection_area(const Box& a, const Box& b);

/// Intersection over union in [0, 1]; 0 when the union area is 0.
double iou(const Box& a, const Box& b);

}  // namespace docstruct
