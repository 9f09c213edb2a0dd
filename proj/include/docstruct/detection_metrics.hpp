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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "docstruct/geometry.hpp"

namespace docstruct {

struct Detection {
  std::string image_id;
  std::string category;
  Box bbox;
  double score = 0.0;  // confidence in [0, 1]
};

struct GtBox {
  std::string image_id;
  std::string category;
  Box bbox;
};

/// Single-category average precision. Detections are matched greedily in
/// descending score order (ties by input order) to the unmatched same-image
/// ground-truth box of highest IoU; a detection is a true positive when
/// that IoU is >= iou_threshold. AP is the all-points area under the
/// precision-recall curve with the precision envelope. Conventions: 1 when
/// both sides are empty, 0 when exactly one side is empty.
double average_precision(std::span<const Detection> dets,
                         std::span<const GtBox> gts, double iou_threshold);

/// The 0.50:0.05:0.95 threshold list.
std::vector<double> coco_iou_thresholds();

struct MeanApResult {
  double map = 0.0;
  std::map<std::string, double> per_class_ap;
};

/// AP averaged over the IoU-threshold list per category, then over the
/// union of categories seen on either side. A category with ground truth
/// but no (matching) detections scores 0, and vice versa.
MeanApResult mean_ap(std::span<const Detection> dets,
                     std::span<const GtBox> gts,
                     std::span<const double> iou_thresholds);

}  // namespace docstruct
