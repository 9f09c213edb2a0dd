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

#include "docstruct/detection_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "docstruct/error.hpp"

namespace docstruct {

double average_precision(std::span<const Detection> dets,
                         std::span<const GtBox> gts, double iou_threshold) {
  if (!(iou_threshold >= 0.0) || !std::isfinite(iou_threshold)) {
    throw ValidationError("iou threshold must be finite and >= 0");
  }
  if (gts.empty()) return dets.empty() ? 1.0 : 0.0;
  if (dets.empty()) return 0.0;

  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });

  std::unordered_map<std::string, std::vector<std::size_t>> gt_by_image;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gt_by_image[gts[g].image_id].push_back(g);
  }
  std::vector<char> gt_matched(gts.size(), 0);

  std::vector<char> tp(order.size(), 0);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Detection& det = dets[order[rank]];
    auto it = gt_by_image.find(det.image_id);
    if (it == gt_by_image.end()) continue;
    double best_iou = 0.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g : it->second) {
      if (gt_matched[g]) continue;
      const double v = iou(det.bbox, gts[g].bbox);
      if (v > best_iou) {
        best_iou = v;
        best_gt = g;
      }
    }
    if (best_gt < gts.size() && best_iou >= iou_threshold &&
        best_iou > 0.0) {
      tp[rank] = 1;
      gt_matched[best_gt] = 1;
    }
  }

  // All-points interpolated area under the PR curve.
  const double n_gt = static_cast<double>(gts.size());
  std::vector<double> precision(order.size());
  std::vector<double> recall(order.size());
  double cum_tp = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum_tp += tp[k];
    precision[k] = cum_tp / static_cast<double>(k + 1);
    recall[k] = cum_tp / n_gt;
  }
  double envelope = 0.0;
  double ap = 0.0;
  for (std::size_t k = order.size(); k-- > 0;) {
    envelope = std::max(envelope, precision[k]);
    const double prev_recall = k == 0 ? 0.0 : recall[k - 1];
    ap += (recall[k] - prev_recall) * envelope;
  }
  return ap;
}

std::vector<double> coco_iou_thresholds() {
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(0.50 + 0.05 * i);
  return out;
}

MeanApResult mean_ap(std::span<const Detection> dets,
                     std::span<const GtBox> gts,
                     std::span<const double> iou_thresholds) {
  if (iou_thresholds.empty()) {
    throw ValidationError("iou threshold list must not be empty");
  }
  std::set<std::string> categories;
  for (const Detection& d : dets) categories.insert(d.category);
  for (const GtBox& g : gts) categories.insert(g.category);

  MeanApResult result;
  if (categories.empty()) {
    result.map = 1.0;  // vacuously perfect, mirrors the both-empty AP case
    return result;
  }
  double sum = 0.0;
  for (const std::string& category : categories) {
    std::vector<Detection> cat_dets;
    std::vector<GtBox> cat_gts;
    for (const Detection& d : dets) {
      if (d.category == category) cat_dets.push_back(d);
    }
    for (const GtBox& g : gts) {
      if (g.category == category) cat_gts.push_back(g);
    }
    double ap_sum = 0.0;
    for (double thr : iou_thresholds) {
      ap_sum += average_precision(cat_dets, cat_gts, thr);
    }
    const double ap = ap_sum / static_cast<double>(iou_thresholds.size());
    result.per_class_ap[category] = ap;
    sum += ap;
  }
  result.map = sum / static_cast<double>(categories.size());
  return result;
}

}  // namespace docstruct
