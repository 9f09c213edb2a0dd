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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/table_grid.hpp"

namespace docstruct {

/// Rooted ordered labeled tree node for table similarity scoring.
/// td nodes are leaves carrying text; framing nodes (table/thead/tbody/tr)
/// carry structure only.
struct TedsNode {
  std::string tag;
  int colspan = 1;
  int rowspan = 1;
  std::string text;
  std::vector<TedsNode> children;
};

enum class ContentCostMode { kLevenshtein, kIgnored };

/// Edit costs: insert, delete, and rename-with-structural-mismatch all
/// cost structural_mismatch_cost; a rename between td nodes with equal
/// tag and spans costs the normalized Levenshtein distance of their texts
/// (or 0 in kIgnored mode).
struct CostConfig {
  double structural_mismatch_cost = 1.0;
  ContentCostMode content_cost_mode = ContentCostMode::kLevenshtein;
};

std::size_t count_nodes(const TedsNode& tree);

/// table root; thead when header rows exist, tbody when body rows exist;
/// tr children; td leaves with text and spans, all in document order.
TedsNode build_tree(const TableGrid& grid);
TedsNode build_tree(std::string_view html);

/// Edit distance over UTF-8 codepoints divided by max length; 0 when both
/// strings are empty.
double normalized_levenshtein(std::string_view a, std::string_view b);

/// Exact minimal-cost ordered-tree edit distance (keyroot / forest
/// decomposition).
double tree_edit_distance(const TedsNode& t1, const TedsNode& t2,
                          const CostConfig& cost = {});

/// Tree-edit-distance similarity: 1 - distance / max(|t1|, |t2|), clamped
/// to [0, 1]; 1 when both trees are empty.
double teds(const TedsNode& pred, const TedsNode& gt);

/// TEDS with cell content ignored (structure-only similarity).
double teds_struct(const TedsNode& pred, const TedsNode& gt);

struct TedsResult {
  double score = 0.0;
  bool pred_parse_failed = false;
};

/// String front ends: an unparseable prediction scores 0 with the flag
/// set; an unparseable ground truth throws.
TedsResult teds(std::string_view pred_html, std::string_view gt_html);
TedsResult teds_struct(std::string_view pred_html, std::string_view gt_html);

}  // namespace docstruct
