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

#include "docstruct/table_grid.hpp"

#include <algorithm>
#include <tuple>

#include "docstruct/error.hpp"
#include "grid_builder.hpp"

namespace docstruct {

namespace {

std::vector<const Cell*> anchor_sorted(const TableGrid& g) {
  std::vector<const Cell*> out;
  out.reserve(g.cells.size());
  for (const Cell& c : g.cells) out.push_back(&c);
  std::sort(out.begin(), out.end(), [](const Cell* a, const Cell* b) {
    return std::tie(a->row, a->col) < std::tie(b->row, b->col);
  });
  return out;
}

}  // namespace

bool operator==(const TableGrid& a, const TableGrid& b) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols ||
      a.header_rows != b.header_rows || a.cells.size() != b.cells.size()) {
    return false;
  }
  const auto sa = anchor_sorted(a);
  const auto sb = anchor_sorted(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (!(*sa[i] == *sb[i])) return false;
  }
  return true;
}

void validate_grid(const TableGrid& grid) {
  if (grid.n_rows < 0 || grid.n_cols < 0) {
    throw StructureError("grid dimensions must be non-negative");
  }
  if (grid.header_rows < 0 || grid.header_rows > grid.n_rows) {
    throw StructureError("header_rows out of range");
  }
  if (static_cast<long>(grid.n_rows) * grid.n_cols >
      detail::GridBuilder::kMaxArea) {
    throw StructureError("table too large");
  }
  std::vector<std::vector<char>> occ(grid.n_rows,
                                     std::vector<char>(grid.n_cols, 0));
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const Cell& c = grid.cells[i];
    if (c.rowspan < 1 || c.colspan < 1) {
      throw StructureError("cell " + std::to_string(i) +
                           ": span must be >= 1");
    }
    if (c.row < 0 || c.col < 0 || c.row + c.rowspan > grid.n_rows ||
        c.col + c.colspan > grid.n_cols) {
      throw StructureError("cell " + std::to_string(i) +
                           " exceeds grid bounds");
    }
    if (c.bbox && !is_valid(*c.bbox)) {
      throw StructureError("cell " + std::to_string(i) + " has invalid bbox");
    }
    for (int r = c.row; r < c.row + c.rowspan; ++r) {
      for (int cc = c.col; cc < c.col + c.colspan; ++cc) {
        if (occ[r][cc]) {
          throw StructureError("cells overlap at (" + std::to_string(r) +
                               ", " + std::to_string(cc) + ")");
        }
        occ[r][cc] = 1;
      }
    }
  }
}

TableGrid tokens_to_grid(const TokenSequence& seq) {
  validate_sequence(seq);
  detail::GridBuilder builder;
  bool in_thead = false;
  int pending_rowspan = 1;
  int pending_colspan = 1;
  for (const StructureToken& tok : seq.tokens) {
    switch (tok.kind) {
      case TokenKind::kTheadOpen: in_thead = true; break;
      case TokenKind::kTheadClose: in_thead = false; break;
      case TokenKind::kTrOpen: builder.open_row(in_thead); break;
      case TokenKind::kTdMerged: builder.place_cell(1, 1, ""); break;
      case TokenKind::kTdOpenBracket:
        pending_rowspan = 1;
        pending_colspan = 1;
        break;
      case TokenKind::kTdAttrRowspan: pending_rowspan = tok.span; break;
      case TokenKind::kTdAttrColspan: pending_colspan = tok.span; break;
      case TokenKind::kTdClose:
        // Closes either a plain split cell or a bracket cell; the pending
        // spans are 1/1 unless attr tokens set them.
        builder.place_cell(pending_rowspan, pending_colspan, "");
        pending_rowspan = 1;
        pending_colspan = 1;
        break;
      default: break;  // table/tbody/tr-close frames carry no placement
    }
  }
  return builder.finish();
}

TokenSequence grid_to_tokens(const TableGrid& grid, VocabularyForm form) {
  validate_grid(grid);
  // Cells grouped by anchor row, left to right.
  std::vector<std::vector<const Cell*>> rows(grid.n_rows);
  for (const Cell* c : anchor_sorted(grid)) rows[c->row].push_back(c);

  TokenSequence seq;
  seq.form = form;
  auto push = [&seq](TokenKind k, int span = 0) {
    seq.tokens.push_back({k, span});
  };
  auto emit_row = [&](const std::vector<const Cell*>& row) {
    push(TokenKind::kTrOpen);
    for (const Cell* c : row) {
      if (c->rowspan == 1 && c->colspan == 1) {
        if (form == VocabularyForm::kMerged) {
          push(TokenKind::kTdMerged);
        } else {
          push(TokenKind::kTdOpen);
          push(TokenKind::kTdClose);
        }
      } else {
        push(TokenKind::kTdOpenBracket);
        if (c->rowspan >= 2) push(TokenKind::kTdAttrRowspan, c->rowspan);
        if (c->colspan >= 2) push(TokenKind::kTdAttrColspan, c->colspan);
        push(TokenKind::kTdClose);
      }
    }
    push(TokenKind::kTrClose);
  };

  push(TokenKind::kTableOpen);
  if (grid.header_rows > 0) {
    push(TokenKind::kTheadOpen);
    for (int r = 0; r < grid.header_rows; ++r) emit_row(rows[r]);
    push(TokenKind::kTheadClose);
  }
  push(TokenKind::kTbodyOpen);
  for (int r = grid.header_rows; r < grid.n_rows; ++r) emit_row(rows[r]);
  push(TokenKind::kTbodyClose);
  push(TokenKind::kTableClose);
  return seq;
}

TableGrid align_cells(const TokenSequence& seq,
                      std::span<const std::optional<Box>> bboxes) {
  const std::size_t n = count_cells(seq);
  if (n != bboxes.size()) {
    throw AlignmentError("structure/location alignment failed", n,
                         bboxes.size());
  }
  TableGrid grid = tokens_to_grid(seq);
  for (std::size_t i = 0; i < bboxes.size(); ++i) {
    if (bboxes[i]) validate_box(*bboxes[i]);
    grid.cells[i].bbox = bboxes[i];
  }
  return grid;
}

TableGrid align_cells(const TokenSequence& seq, std::span<const Box> bboxes) {
  std::vector<std::optional<Box>> opt(bboxes.begin(), bboxes.end());
  return align_cells(seq, opt);
}

}  // namespace docstruct
