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
#include <optional>
#include <string>
#include <vector>

namespace docstruct {

struct KieSection {
  double precision = 0.0;
  double recall = 0.0;
  double hmean = 0.0;
  long n_pred = 0;
  long n_gt = 0;
  long n_correct = 0;
  long n_images = 0;

  bool operator==(const KieSection&) const = default;
};

struct SampleDetail {
  std::string id;
  long gt_tokens = 0;
  bool skipped = false;
  bool exact_match = false;
  bool pred_parse_failed = false;
  std::optional<double> teds;
  std::optional<double> teds_struct;

  bool operator==(const SampleDetail&) const = default;
};

/// Aggregate metrics container shared by all evaluation commands; only the
/// sections a command computes are populated.
struct EvalReport {
  std::string task;
  std::optional<std::string> protocol;                  // layout
  std::optional<std::vector<double>> iou_thresholds;    // layout
  std::optional<double> map;                            // layout
  std::optional<std::map<std::string, double>> per_class_ap;
  std::optional<long> n_detections;                     // layout
  std::optional<long> n_gt_boxes;                       // layout
  std::optional<long> n_samples;                        // table
  std::optional<double> structure_accuracy;             // table
  std::optional<long> n_evaluated;                      // table
  std::optional<long> n_skipped;                        // table
  std::optional<double> mean_teds;                      // table
  std::optional<double> mean_teds_struct;               // table
  std::optional<long> n_pred_parse_failures;            // table
  std::optional<KieSection> ser;                        // kie
  std::optional<KieSection> re;                         // kie
  std::vector<SampleDetail> per_sample;                 // table detail

  bool operator==(const EvalReport&) const = default;
};

enum class ReportFormat { kJson, kText };

/// Fixed 6-decimal formatting used for every ratio in reports.
std::string format_ratio(double value);

/// Serialization is byte-deterministic: stable key order, fixed-format
/// ratios, no environment-dependent content.
std::string report_to_json(const EvalReport& report);
std::string report_to_text(const EvalReport& report);

/// Writes the report (JSON or human-readable text). Throws IoError when
/// the path is unwritable. Ratios out of [0, 1] throw ValidationError.
void write_report(const EvalReport& report, const std::string& path,
                  ReportFormat format);

/// Reads back a JSON report written by write_report.
EvalReport read_report(const std::string& path);

}  // namespace docstruct
