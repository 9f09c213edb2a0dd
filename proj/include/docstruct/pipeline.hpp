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

#include <string>
#include <vector>

#include "docstruct/io_formats.hpp"
#include "docstruct/reading_order.hpp"
#include "docstruct/report.hpp"

namespace docstruct {

struct LayoutEvalOptions {
  bool coco = true;  // false: single threshold 0.5
};

/// Detection mAP over pred/gt box files.
EvalReport run_layout_eval(const std::string& pred_path,
                           const std::string& gt_path,
                           const LayoutEvalOptions& options);

struct TableEvalOptions {
  long max_tokens = 500;
  bool struct_only = false;
  int threads = 1;
  bool lenient = false;
};

/// Table recognition evaluation over two PubTabNet-style JSONL files paired
/// by filename: structure accuracy (length-filtered), TEDS and TEDS-Struct
/// (all samples). The report is byte-identical for any thread count.
EvalReport run_table_eval(const std::string& pred_path,
                          const std::string& gt_path,
                          const TableEvalOptions& options,
                          std::vector<Diagnostic>* diagnostics = nullptr);

enum class KieTask { kSer, kRe };

/// SER or RE Hmean over per-image KIE files, micro-aggregated (global
/// counts) across images paired by image_id.
EvalReport run_kie_eval(const std::string& pred_path,
                        const std::string& gt_path, KieTask task);

enum class RecoverFormat { kHtml, kMarkdown, kBoth };

struct RecoverOptions {
  RecoverFormat format = RecoverFormat::kBoth;
  OrderConfig order;
};

struct RecoverSummary {
  std::size_t n_pages = 0;
  std::vector<std::string> files_written;
  std::vector<std::string> warnings;
};

/// Recovers every page in the bundle into <out_dir>/<name>.html / .md.
RecoverSummary run_recover(const std::string& bundle_path,
                           const std::string& out_dir,
                           const RecoverOptions& options);

}  // namespace docstruct
