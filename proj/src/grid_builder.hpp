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
#include <vector>

#include "docstruct/error.hpp"
#include "docstruct/table_grid.hpp"

namespace docstruct::detail {

// Shared left-to-right, top-to-bottom placement engine for token streams
// and the HTML parser. Rows are opened in document order; each placed cell
// anchors at the leftmost unoccupied column of the current row and marks
// its span rectangle in the occupancy matrix.
class GridBuilder {
public:
  static constexpr int kMaxSpan = 4096;
  static constexpr long kMaxArea = 50'000'000;  // occupied cells ceiling

  void open_row(bool in_thead) {
    ++row_count_;
    cur_row_ = row_count_ - 1;
    cursor_ = 0;
    if (in_thead) ++header_rows_;
    if (static_cast<std::size_t>(row_count_) > occ_.size()) {
      occ_.resize(row_count_);
    }
  }

  bool has_open_row() const { return cur_row_ >= 0; }

  void place_cell(int rowspan, int colspan, std::string text) {
    if (cur_row_ < 0) throw StructureError("cell outside any row");
    if (rowspan < 1 || colspan < 1) {
      throw StructureError("cell span must be >= 1");
    }
    if (rowspan > kMaxSpan || colspan > kMaxSpan) {
      throw StructureError("cell span exceeds supported maximum");
    }
    area_ += static_cast<long>(rowspan) * colspan;
    if (area_ > kMaxArea) throw StructureError("table too large");
    // Leftmost unoccupied column of the current row.
    std::vector<char>& row = occ_[cur_row_];
    while (cursor_ < static_cast<int>(row.size()) && row[cursor_]) ++cursor_;
    const int col = cursor_;
    const int bottom = cur_row_ + rowspan;
    if (static_cast<std::size_t>(bottom) > occ_.size()) occ_.resize(bottom);
    for (int r = cur_row_; r < bottom; ++r) {
      std::vector<char>& target = occ_[r];
      if (static_cast<std::size_t>(col + colspan) > target.size()) {
        target.resize(col + colspan, 0);
      }
      for (int c = col; c < col + colspan; ++c) target[c] = 1;
    }
    Cell cell;
    cell.row = cur_row_;
    cell.col = col;
    cell.rowspan = rowspan;
    cell.colspan = colspan;
    cell.text = std::move(text);
    cells_.push_back(std::move(cell));
    cursor_ = col + colspan;
  }

  TableGrid finish() {
    TableGrid grid;
    grid.header_rows = header_rows_;
    grid.cells = std::move(cells_);
    int max_row = row_count_;
    int max_col = 0;
    for (const Cell& c : grid.cells) {
      max_row = std::max(max_row, c.row + c.rowspan);
      max_col = std::max(max_col, c.col + c.colspan);
    }
    grid.n_rows = max_row;
    grid.n_cols = max_col;
    return grid;
  }

private:
  std::vector<std::vector<char>> occ_;
  std::vector<Cell> cells_;
  int row_count_ = 0;
  int cur_row_ = -1;
  int cursor_ = 0;
  int header_rows_ = 0;
  long area_ = 0;
};

}  // namespace docstruct::detail
