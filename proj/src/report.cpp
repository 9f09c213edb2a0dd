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

#include "docstruct/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "docstruct/error.hpp"
#include "json.hpp"

namespace docstruct {

namespace {

using Json = nlohmann::ordered_json;

void check_ratio(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string("report ratio '") + name +
                          "' out of [0, 1]");
  }
}

Json kie_to_json(const KieSection& s) {
  Json j;
  j["precision"] = format_ratio(s.precision);
  j["recall"] = format_ratio(s.recall);
  j["hmean"] = format_ratio(s.hmean);
  j["n_pred"] = s.n_pred;
  j["n_gt"] = s.n_gt;
  j["n_correct"] = s.n_correct;
  j["n_images"] = s.n_images;
  return j;
}

KieSection kie_from_json(const Json& j) {
  KieSection s;
  s.precision = std::stod(j.at("precision").get<std::string>());
  s.recall = std::stod(j.at("recall").get<std::string>());
  s.hmean = std::stod(j.at("hmean").get<std::string>());
  s.n_pred = j.at("n_pred").get<long>();
  s.n_gt = j.at("n_gt").get<long>();
  s.n_correct = j.at("n_correct").get<long>();
  s.n_images = j.at("n_images").get<long>();
  return s;
}

void validate_report(const EvalReport& r) {
  if (r.map) check_ratio(*r.map, "map");
  if (r.per_class_ap) {
    for (const auto& [k, v] : *r.per_class_ap) check_ratio(v, k.c_str());
  }
  if (r.structure_accuracy) {
    check_ratio(*r.structure_accuracy, "structure_accuracy");
  }
  if (r.mean_teds) check_ratio(*r.mean_teds, "mean_teds");
  if (r.mean_teds_struct) check_ratio(*r.mean_teds_struct, "mean_teds_struct");
  for (const KieSection* s : {r.ser ? &*r.ser : nullptr,
                              r.re ? &*r.re : nullptr}) {
    if (!s) continue;
    check_ratio(s->precision, "precision");
    check_ratio(s->recall, "recall");
    check_ratio(s->hmean, "hmean");
  }
}

}  // namespace

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string report_to_json(const EvalReport& report) {
  validate_report(report);
  Json j;
  j["task"] = report.task;
  if (report.protocol) j["protocol"] = *report.protocol;
  if (report.iou_thresholds) {
    Json arr = Json::array();
    for (double t : *report.iou_thresholds) arr.push_back(format_ratio(t));
    j["iou_thresholds"] = arr;
  }
  if (report.map) j["map"] = format_ratio(*report.map);
  if (report.per_class_ap) {
    Json obj = Json::object();
    for (const auto& [k, v] : *report.per_class_ap) obj[k] = format_ratio(v);
    j["per_class_ap"] = obj;
  }
  if (report.n_detections) j["n_detections"] = *report.n_detections;
  if (report.n_gt_boxes) j["n_gt_boxes"] = *report.n_gt_boxes;
  if (report.n_samples) j["n_samples"] = *report.n_samples;
  if (report.structure_accuracy) {
    j["structure_accuracy"] = format_ratio(*report.structure_accuracy);
  }
  if (report.n_evaluated) j["n_evaluated"] = *report.n_evaluated;
  if (report.n_skipped) j["n_skipped"] = *report.n_skipped;
  if (report.mean_teds) j["mean_teds"] = format_ratio(*report.mean_teds);
  if (report.mean_teds_struct) {
    j["mean_teds_struct"] = format_ratio(*report.mean_teds_struct);
  }
  if (report.n_pred_parse_failures) {
    j["n_pred_parse_failures"] = *report.n_pred_parse_failures;
  }
  if (report.ser) j["ser"] = kie_to_json(*report.ser);
  if (report.re) j["re"] = kie_to_json(*report.re);
  if (!report.per_sample.empty()) {
    Json arr = Json::array();
    for (const SampleDetail& s : report.per_sample) {
      Json e;
      e["id"] = s.id;
      e["gt_tokens"] = s.gt_tokens;
      e["skipped"] = s.skipped;
      e["exact_match"] = s.exact_match;
      e["pred_parse_failed"] = s.pred_parse_failed;
      if (s.teds) e["teds"] = format_ratio(*s.teds);
      if (s.teds_struct) e["teds_struct"] = format_ratio(*s.teds_struct);
      arr.push_back(std::move(e));
    }
    j["per_sample"] = std::move(arr);
  }
  return j.dump();
}

std::string report_to_text(const EvalReport& report) {
  validate_report(report);
  std::ostringstream out;
  out << "task: " << report.task << "\n";
  if (report.protocol) out << "protocol: " << *report.protocol << "\n";
  if (report.map) out << "map: " << format_ratio(*report.map) << "\n";
  if (report.per_class_ap) {
    for (const auto& [k, v] : *report.per_class_ap) {
      out << "  ap[" << k << "]: " << format_ratio(v) << "\n";
    }
  }
  if (report.n_detections) out << "n_detections: " << *report.n_detections << "\n";
  if (report.n_gt_boxes) out << "n_gt_boxes: " << *report.n_gt_boxes << "\n";
  if (report.n_samples) out << "n_samples: " << *report.n_samples << "\n";
  if (report.structure_accuracy) {
    out << "structure_accuracy: " << format_ratio(*report.structure_accuracy)
        << "\n";
  }
  if (report.n_evaluated) out << "n_evaluated: " << *report.n_evaluated << "\n";
  if (report.n_skipped) out << "n_skipped: " << *report.n_skipped << "\n";
  if (report.mean_teds) {
    out << "mean_teds: " << format_ratio(*report.mean_teds) << "\n";
  }
  if (report.mean_teds_struct) {
    out << "mean_teds_struct: " << format_ratio(*report.mean_teds_struct)
        << "\n";
  }
  if (report.n_pred_parse_failures) {
    out << "n_pred_parse_failures: " << *report.n_pred_parse_failures << "\n";
  }
  auto emit_kie = [&out](const char* name, const std::optional<KieSection>& s) {
    if (!s) return;
    out << name << ".precision: " << format_ratio(s->precision) << "\n"
        << name << ".recall: " << format_ratio(s->recall) << "\n"
        << name << ".hmean: " << format_ratio(s->hmean) << "\n"
        << name << ".n_pred: " << s->n_pred << "\n"
        << name << ".n_gt: " << s->n_gt << "\n"
        << name << ".n_correct: " << s->n_correct << "\n"
        << name << ".n_images: " << s->n_images << "\n";
  };
  emit_kie("ser", report.ser);
  emit_kie("re", report.re);
  return out.str();
}

void write_report(const EvalReport& report, const std::string& path,
                  ReportFormat format) {
  const std::string payload = format == ReportFormat::kJson
                                  ? report_to_json(report)
                                  : report_to_text(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << payload;
  if (format == ReportFormat::kJson) out << "\n";
  out.flush();
  if (!out) throw IoError("failed writing report to '" + path + "'");
}

EvalReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report '" + path + "': " + e.what());
  }
  EvalReport r;
  try {
    r.task = j.at("task").get<std::string>();
    if (j.contains("protocol")) r.protocol = j["protocol"].get<std::string>();
    if (j.contains("iou_thresholds")) {
      std::vector<double> ts;
      for (const auto& t : j["iou_thresholds"]) {
        ts.push_back(std::stod(t.get<std::string>()));
      }
      r.iou_thresholds = std::move(ts);
    }
    if (j.contains("map")) r.map = std::stod(j["map"].get<std::string>());
    if (j.contains("per_class_ap")) {
      std::map<std::string, double> pc;
      for (const auto& [k, v] : j["per_class_ap"].items()) {
        pc[k] = std::stod(v.get<std::string>());
      }
      r.per_class_ap = std::move(pc);
    }
    if (j.contains("n_detections")) r.n_detections = j["n_detections"].get<long>();
    if (j.contains("n_gt_boxes")) r.n_gt_boxes = j["n_gt_boxes"].get<long>();
    if (j.contains("n_samples")) r.n_samples = j["n_samples"].get<long>();
    if (j.contains("structure_accuracy")) {
      r.structure_accuracy =
          std::stod(j["structure_accuracy"].get<std::string>());
    }
    if (j.contains("n_evaluated")) r.n_evaluated = j["n_evaluated"].get<long>();
    if (j.contains("n_skipped")) r.n_skipped = j["n_skipped"].get<long>();
    if (j.contains("mean_teds")) {
      r.mean_teds = std::stod(j["mean_teds"].get<std::string>());
    }
    if (j.contains("mean_teds_struct")) {
      r.mean_teds_struct = std::stod(j["mean_teds_struct"].get<std::string>());
    }
    if (j.contains("n_pred_parse_failures")) {
      r.n_pred_parse_failures = j["n_pred_parse_failures"].get<long>();
    }
    if (j.contains("ser")) r.ser = kie_from_json(j["ser"]);
    if (j.contains("re")) r.re = kie_from_json(j["re"]);
    if (j.contains("per_sample")) {
      for (const auto& e : j["per_sample"]) {
        SampleDetail s;
        s.id = e.at("id").get<std::string>();
        s.gt_tokens = e.at("gt_tokens").get<long>();
        s.skipped = e.at("skipped").get<bool>();
        s.exact_match = e.at("exact_match").get<bool>();
        s.pred_parse_failed = e.at("pred_parse_failed").get<bool>();
        if (e.contains("teds")) {
          s.teds = std::stod(e["teds"].get<std::string>());
        }
        if (e.contains("teds_struct")) {
          s.teds_struct = std::stod(e["teds_struct"].get<std::string>());
        }
        r.per_sample.push_back(std::move(s));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("report '" + path + "': " + e.what());
  }
  return r;
}

}  // namespace docstruct
