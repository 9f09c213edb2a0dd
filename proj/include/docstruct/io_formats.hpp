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

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "docstruct/detection_metrics.hpp"
#include "docstruct/kie_metrics.hpp"
#include "docstruct/recovery.hpp"
#include "docstruct/table_grid.hpp"

namespace docstruct {

/// Diagnostic with file/line provenance, collected in lenient mode.
struct Diagnostic {
  std::string file;
  std::size_t line = 0;
  std::string message;
};

struct TableCellRecord {
  std::vector<std::string> tokens;  // content tokens, inline tags included
  std::optional<Box> bbox;
};

/// One line of a PubTabNet-style table annotation file.
struct TableAnnotationRecord {
  std::string filename;
  std::string split;
  std::vector<std::string> structure_tokens;
  std::vector<TableCellRecord> cells;
  std::size_t line_number = 0;
};

/// Streaming line-by-line reader; memory use is bounded by the largest
/// single line. In strict mode (default) a malformed line throws; in
/// lenient mode it is skipped and recorded as a diagnostic.
class JsonlTableReader {
public:
  explicit JsonlTableReader(std::string path, bool lenient = false);
  ~JsonlTableReader();
  JsonlTableReader(JsonlTableReader&&) noexcept;
  JsonlTableReader& operator=(JsonlTableReader&&) noexcept;

  /// Next record, or nullopt at end of file.
  std::optional<TableAnnotationRecord> next();
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  const std::string& path() const { return path_; }

private:
  std::string path_;
  bool lenient_ = false;
  std::unique_ptr<std::ifstream> in_;
  std::size_t line_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

/// Eager convenience wrapper over JsonlTableReader.
std::vector<TableAnnotationRecord> read_table_jsonl(
    const std::string& path, bool lenient = false,
    std::vector<Diagnostic>* diagnostics = nullptr);

struct TableFromRecord {
  TableGrid grid;
  std::string html;  // structure tokens interleaved with cell content
  TokenSequence tokens;
};

/// Resolves a record: structure tokens parsed, cell text and bboxes aligned
/// one-to-one with the cell tokens, HTML reconstructed for TEDS input.
/// Throws AlignmentError (naming the record) on a count mismatch.
TableFromRecord record_to_table(const TableAnnotationRecord& record);

/// JSON array of {image_id, category, bbox, score}; scores must be in
/// [0, 1].
std::vector<Detection> read_detections(const std::string& path);

/// JSON array of {image_id, category, bbox}; a score field is rejected.
std::vector<GtBox> read_gt_boxes(const std::string& path);

struct KieAnnotationRecord {
  std::string image_id;
  std::vector<Entity> entities;
  std::vector<Relation> relations;
};

/// JSON array of per-image {image_id, entities, relations}; entity ids are
/// unique per image and relation endpoints must resolve.
std::vector<KieAnnotationRecord> read_kie(const std::string& path);

struct NamedPage {
  std::string name;
  PageBundle page;
};

/// Bundle file: a single page object or an array of pages. Page names come
/// from the optional "name" field, else the file stem (suffixed _p2, _p3...
/// for multi-page files).
std::vector<NamedPage> read_page_bundles(const std::string& path);

}  // namespace docstruct
