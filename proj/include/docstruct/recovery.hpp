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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "docstruct/geometry.hpp"
#include "docstruct/reading_order.hpp"
#include "docstruct/table_grid.hpp"

namespace docstruct {

enum class RegionCategory {
  kText,
  kTitle,
  kList,
  kTable,
  kFigure,
  kFigureCaption,
  kTableCaption,
  kHeader,
  kFooter,
  kReference,
  kEquation,
};

std::optional<RegionCategory> region_category_from_string(std::string_view s);
std::string_view to_string(RegionCategory category);

struct LayoutRegion {
  RegionCategory category = RegionCategory::kText;
  Box bbox;
  double score = 1.0;
};

struct TextLine {
  Box bbox;
  std::string text;
};

/// Layout regions, OCR text lines and recognized tables for one page: the
/// input to layout recovery. Table entries key region indices whose
/// category is kTable.
struct PageBundle {
  double page_width = 0.0;
  double page_height = 0.0;
  std::vector<LayoutRegion> regions;
  std::vector<TextLine> text_lines;
  std::map<std::size_t, TableGrid> tables;
};

void validate_bundle(const PageBundle& bundle);

struct LineAssignment {
  std::vector<std::vector<std::size_t>> region_lines;  // per region, ordered
  std::vector<std::size_t> orphans;                    // unordered
};

/// Assigns each line to the non-header/footer region maximizing the overlap
/// ratio (intersection area / line area) when that ratio is >= threshold;
/// otherwise the line is an orphan. Within-region lines come back in
/// TB-YX order.
LineAssignment assign_text_to_regions(std::span<const TextLine> lines,
                                      std::span<const LayoutRegion> regions,
                                      double overlap_threshold = 0.5,
                                      const OrderConfig& order = {});

enum class ColumnSlot { kFullWidth, kLeft, kRight };

struct ColumnLayout {
  int n_columns = 1;
  double split_x = 0.0;                // gutter center, 2-column mode only
  std::vector<ColumnSlot> slots;       // per region
};

/// Two columns iff a vertical gutter band of width >= 3% of the page width
/// lies within [35%, 65%] of the page width, intersects no non-full-width
/// body region, and both sides of it are populated. Full-width regions
/// (spanning the whole gutter window) become section breaks.
ColumnLayout detect_columns(std::span<const LayoutRegion> regions,
                            double page_width);

/// Reading order over regions: single column is sort_tb_yx; with two
/// columns full-width regions split the page into sections and, within
/// each section, the left column fully precedes the right one.
std::vector<std::size_t> order_regions(std::span<const LayoutRegion> regions,
                                       const OrderConfig& order,
                                       double page_width);

struct Heading {
  int level = 1;
  std::string text;
};
struct Paragraph {
  std::string text;
};
struct ListBlock {
  std::vector<std::string> items;
};
struct TableBlock {
  TableGrid grid;
};
struct FigureBlock {
  std::string label;
  Box bbox;
};
using Block = std::variant<Heading, Paragraph, ListBlock, TableBlock,
                           FigureBlock>;

struct DocumentModel {
  std::vector<Block> blocks;
  std::vector<std::string> warnings;
};

/// Assembles the flow document: regions in reading order produce blocks
/// (headers/footers none), captions re-attach after their nearest table or
/// figure block, orphan lines trail as paragraphs in TB-YX order.
DocumentModel build_document(const PageBundle& bundle,
                             const OrderConfig& order = {});

std::string emit_html(const DocumentModel& doc);
std::string emit_markdown(const DocumentModel& doc);

/// Pipe table for span-free grids, embedded HTML otherwise.
std::string table_to_markdown(const TableGrid& grid);

}  // namespace docstruct
