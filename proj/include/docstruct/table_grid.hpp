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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docstruct/geometry.hpp"
#include "docstruct/table_token.hpp"

namespace docstruct {

/// One logical table cell anchored at a zero-based grid position.
/// The occupied rectangle is [row, row+rowspan) x [col, col+colspan).
struct Cell {
  int row = 0;
  int col = 0;
  int rowspan = 1;
  int colspan = 1;
  std::string text;
  std::optional<Box> bbox;

  bool operator==(const Cell&) const = default;
};

/// Resolved row-column occupancy grid. Cells are kept in document order
/// (row-major by anchor for grids built from token streams).
struct TableGrid {
  int n_rows = 0;
  int n_cols = 0;
  int header_rows = 0;  // leading rows that belong to thead
  std::vector<Cell> cells;
};

/// Semantic equality: dimensions, header count, and the anchor-sorted cell
/// lists (text, spans, bbox) must match.
bool operator==(const TableGrid& a, const TableGrid& b);
inline bool operator!=(const TableGrid& a, const TableGrid& b) {
  return !(a == b);
}

/// Checks grid invariants: spans >= 1, cells inside bounds, no two cells
/// overlapping (brute-force occupancy matrix). Throws StructureError.
void validate_grid(const TableGrid& grid);

/// Resolves a token stream into its occupancy grid. Each cell anchors at
/// the leftmost unoccupied column of its row; rowspans reserve positions
/// in subsequent rows.
TableGrid tokens_to_grid(const TokenSequence& seq);

/// Canonical serialization: table wrapper, thead for the header rows when
/// present, tbody always, rows in order with anchored cells left to right.
/// tokens_to_grid(grid_to_tokens(g)) == g for any grid produced from a
/// token stream.
TokenSequence grid_to_tokens(const TableGrid& grid, VocabularyForm form);

/// Attaches the i-th bbox to the i-th cell in token order, enforcing the
/// one-to-one structure/location correspondence as a data contract. Throws
/// AlignmentError on a count mismatch.
TableGrid align_cells(const TokenSequence& seq,
                      std::span<const std::optional<Box>> bboxes);
TableGrid align_cells(const TokenSequence& seq, std::span<const Box> bboxes);

}  // namespace docstruct
