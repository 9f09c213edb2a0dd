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

#include "docstruct/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <unordered_map>

#include "docstruct/detection_metrics.hpp"
#include "docstruct/error.hpp"
#include "docstruct/kie_metrics.hpp"
#include "docstruct/recovery.hpp"
#include "docstruct/table_metrics.hpp"

namespace docstruct {

EvalReport run_layout_eval(const std::string& pred_path,
                           const std::string& gt_path,
                           const LayoutEvalOptions& options) {
  const std::vector<Detection> dets = read_detections(pred_path);
  const std::vector<GtBox> gts = read_gt_boxes(gt_path);
  const std::vector<double> thresholds =
      options.coco ? coco_iou_thresholds() : std::vector<double>{0.5};
  const MeanApResult result = mean_ap(dets, gts, thresholds);

  EvalReport report;
  report.task = "layout";
  report.protocol = options.coco ? "coco" : "single";
  report.iou_thresholds = thresholds;
  report.map = result.map;
  report.per_class_ap = result.per_class_ap;
  report.n_detections = static_cast<long>(dets.size());
  report.n_gt_boxes = static_cast<long>(gts.size());
  return report;
}

EvalReport run_table_eval(const std::string& pred_path,
                          const std::string& gt_path,
                          const TableEvalOptions& options,
                          std::vector<Diagnostic>* diagnostics) {
  std::vector<Diagnostic> diags;

  // Predictions keyed by filename; first record wins on duplicates.
  std::unordered_map<std::string, TableAnnotationRecord> preds;
  {
    JsonlTableReader reader(pred_path, options.lenient);
    while (auto rec = reader.next()) {
      const std::string filename = rec->filename;
      if (!preds.emplace(filename, std::move(*rec)).second) {
        if (!options.lenient) {
          throw ValidationError(pred_path + ": duplicate filename '" +
                                filename + "'");
        }
        diags.push_back({pred_path, rec->line_number,
                         "duplicate filename '" + filename + "'"});
      }
    }
    diags.insert(diags.end(), reader.diagnostics().begin(),
                 reader.diagnostics().end());
  }

  std::vector<TableSample> samples;
  {
    JsonlTableReader reader(gt_path, options.lenient);
    while (auto rec = reader.next()) {
      TableSample sample;
      sample.sample_id = rec->filename;
      TableFromRecord gt;
      try {
        gt = record_to_table(*rec);
      } catch (const Error& e) {
        if (!options.lenient) throw;
        diags.push_back({gt_path, rec->line_number, e.what()});
        continue;
      }
      sample.gt_tokens = std::move(gt.tokens);
      sample.gt_html = std::move(gt.html);
      auto it = preds.find(rec->filename);
      if (it == preds.end()) {
        sample.pred_tokens_valid = false;
        diags.push_back({pred_path, 0,
                         "no prediction for '" + rec->filename + "'"});
      } else {
        try {
          TableFromRecord pred = record_to_table(it->second);
          sample.pred_tokens = std::move(pred.tokens);
          sample.pred_html = std::move(pred.html);
        } catch (const Error& e) {
          sample.pred_tokens_valid = false;
          diags.push_back({pred_path, it->second.line_number, e.what()});
        }
      }
      samples.push_back(std::move(sample));
    }
    diags.insert(diags.end(), reader.diagnostics().begin(),
                 reader.diagnostics().end());
  }

  const StructureAccuracyResult acc =
      structure_accuracy(samples, options.max_tokens);
  const BatchTedsResult struct_res =
      batch_teds(samples, /*struct_only=*/true, options.threads);
  BatchTedsResult full_res;
  if (!options.struct_only) {
    full_res = batch_teds(samples, /*struct_only=*/false, options.threads);
  }

  EvalReport report;
  report.task = "table";
  report.n_samples = static_cast<long>(samples.size());
  report.structure_accuracy = acc.accuracy;
  report.n_evaluated = acc.n_evaluated;
  report.n_skipped = acc.n_skipped;
  if (!options.struct_only) report.mean_teds = full_res.mean;
  report.mean_teds_struct = struct_res.mean;
  long parse_failures = 0;
  report.per_sample.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    SampleDetail detail;
    detail.id = samples[i].sample_id;
    detail.gt_tokens = acc.gt_token_len[i];
    detail.skipped = acc.skipped[i] != 0;
    detail.exact_match = acc.matched[i] != 0;
    detail.pred_parse_failed = struct_res.per_sample[i].pred_parse_failed;
    if (detail.pred_parse_failed) ++parse_failures;
    if (!options.struct_only) detail.teds = full_res.per_sample[i].score;
    detail.teds_struct = struct_res.per_sample[i].score;
    report.per_sample.push_back(std::move(detail));
  }
  report.n_pred_parse_failures = parse_failures;
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), diags.begin(), diags.end());
  }
  return report;
}

EvalReport run_kie_eval(const std::string& pred_path,
                        const std::string& gt_path, KieTask task) {
  const std::vector<KieAnnotationRecord> preds = read_kie(pred_path);
  const std::vector<KieAnnotationRecord> gts = read_kie(gt_path);

  std::unordered_map<std::string, const KieAnnotationRecord*> pred_by_image;
  std::unordered_map<std::string, const KieAnnotationRecord*> gt_by_image;
  for (const KieAnnotationRecord& r : preds) {
    if (!pred_by_image.emplace(r.image_id, &r).second) {
      throw ValidationError(pred_path + ": duplicate image_id '" +
                            r.image_id + "'");
    }
  }
  for (const KieAnnotationRecord& r : gts) {
    if (!gt_by_image.emplace(r.image_id, &r).second) {
      throw ValidationError(gt_path + ": duplicate image_id '" + r.image_id +
                            "'");
    }
  }
  std::set<std::string> image_ids;
  for (const auto& [id, _] : pred_by_image) image_ids.insert(id);
  for (const auto& [id, _] : gt_by_image) image_ids.insert(id);

  static const KieAnnotationRecord kEmpty{};
  MatchCounts totals;
  for (const std::string& id : image_ids) {
    const KieAnnotationRecord& pred =
        pred_by_image.count(id) ? *pred_by_image[id] : kEmpty;
    const KieAnnotationRecord& gt =
        gt_by_image.count(id) ? *gt_by_image[id] : kEmpty;
    if (task == KieTask::kSer) {
      totals += ser_match_counts(pred.entities, gt.entities);
    } else {
      totals += re_match_counts(pred.relations, pred.entities, gt.relations,
                                gt.entities);
    }
  }
  const PrfScore score = prf_from_counts(totals);

  EvalReport report;
  report.task = task == KieTask::kSer ? "ser" : "re";
  KieSection section;
  section.precision = score.precision;
  section.recall = score.recall;
  section.hmean = score.hmean;
  section.n_pred = totals.n_pred;
  section.n_gt = totals.n_gt;
  section.n_correct = totals.correct;
  section.n_images = static_cast<long>(image_ids.size());
  if (task == KieTask::kSer) {
    report.ser = section;
  } else {
    report.re = section;
  }
  return report;
}

RecoverSummary run_recover(const std::string& bundle_path,
                           const std::string& out_dir,
                           const RecoverOptions& options) {
  const std::vector<NamedPage> pages = read_page_bundles(bundle_path);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir +
                  "': " + ec.message());
  }
  RecoverSummary summary;
  summary.n_pages = pages.size();
  auto write_file = [&](const std::string& name, const std::string& payload) {
    const std::string path =
        (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << payload;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
    summary.files_written.push_back(path);
  };
  for (const NamedPage& page : pages) {
    const DocumentModel doc = build_document(page.page, options.order);
    for (const std::string& warning : doc.warnings) {
      summary.warnings.push_back(page.name + ": " + warning);
    }
    if (options.format != RecoverFormat::kMarkdown) {
      write_file(page.name + ".html", emit_html(doc));
    }
    if (options.format != RecoverFormat::kHtml) {
      write_file(page.name + ".md", emit_markdown(doc));
    }
  }
  return summary;
}

}  // namespace docstruct
