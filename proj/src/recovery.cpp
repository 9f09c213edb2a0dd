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

#include "docstruct/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "docstruct/error.hpp"
#include "docstruct/html_table.hpp"

namespace docstruct {

namespace {

constexpr double kGutterWindowLo = 0.35;
constexpr double kGutterWindowHi = 0.65;
constexpr double kGutterMinWidthRatio = 0.03;

bool is_page_furniture(RegionCategory c) {
  return c == RegionCategory::kHeader || c == RegionCategory::kFooter;
}

bool is_caption(RegionCategory c) {
  return c == RegionCategory::kFigureCaption ||
         c == RegionCategory::kTableCaption;
}

}  // namespace

std::optional<RegionCategory> region_category_from_string(
    std::string_view s) {
  if (s == "text") return RegionCategory::kText;
  if (s == "title") return RegionCategory::kTitle;
  if (s == "list") return RegionCategory::kList;
  if (s == "table") return RegionCategory::kTable;
  if (s == "figure") return RegionCategory::kFigure;
  if (s == "figure_caption") return RegionCategory::kFigureCaption;
  if (s == "table_caption") return RegionCategory::kTableCaption;
  if (s == "header") return RegionCategory::kHeader;
  if (s == "footer") return RegionCategory::kFooter;
  if (s == "reference") return RegionCategory::kReference;
  if (s == "equation") return RegionCategory::kEquation;
  return std::nullopt;
}

std::string_view to_string(RegionCategory category) {
  switch (category) {
    case RegionCategory::kText: return "text";
    case RegionCategory::kTitle: return "title";
    case RegionCategory::kList: return "list";
    case RegionCategory::kTable: return "table";
    case RegionCategory::kFigure: return "figure";
    case RegionCategory::kFigureCaption: return "figure_caption";
    case RegionCategory::kTableCaption: return "table_caption";
    case RegionCategory::kHeader: return "header";
    case RegionCategory::kFooter: return "footer";
    case RegionCategory::kReference: return "reference";
    case RegionCategory::kEquation: return "equation";
  }
  return "text";
}

void validate_bundle(const PageBundle& bundle) {
  if (!(bundle.page_width > 0.0) || !(bundle.page_height > 0.0) ||
      !std::isfinite(bundle.page_width) || !std::isfinite(bundle.page_height)) {
    throw ValidationError("page size must be positive and finite");
  }
  for (std::size_t i = 0; i < bundle.regions.size(); ++i) {
    if (!is_valid(bundle.regions[i].bbox)) {
      throw ValidationError("region " + std::to_string(i) +
                            " has an invalid box");
    }
  }
  for (std::size_t i = 0; i < bundle.text_lines.size(); ++i) {
    if (!is_valid(bundle.text_lines[i].bbox)) {
      throw ValidationError("text line " + std::to_string(i) +
                            " has an invalid box");
    }
  }
  for (const auto& [idx, grid] : bundle.tables) {
    if (idx >= bundle.regions.size() ||
        bundle.regions[idx].category != RegionCategory::kTable) {
      throw ValidationError("table entry " + std::to_string(idx) +
                            " does not reference a table region");
    }
    validate_grid(grid);
  }
}

LineAssignment assign_text_to_regions(std::span<const TextLine> lines,
                                      std::span<const LayoutRegion> regions,
                                      double overlap_threshold,
                                      const OrderConfig& order) {
  LineAssignment out;
  out.region_lines.resize(regions.size());
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Box& lb = lines[li].bbox;
    const double line_area = lb.area();
    double best_ratio = 0.0;
    std::size_t best_region = regions.size();
    for (std::size_t ri = 0; ri < regions.size(); ++ri) {
      if (is_page_furniture(regions[ri].category)) continue;
      const double inter = intersection_area(lb, regions[ri].bbox);
      const double ratio = line_area > 0.0 ? inter / line_area : 0.0;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_region = ri;
      }
    }
    if (best_region < regions.size() && best_ratio >= overlap_threshold) {
      out.region_lines[best_region].push_back(li);
    } else {
      out.orphans.push_back(li);
    }
  }
  // TB-YX order inside each region.
  for (std::vector<std::size_t>& members : out.region_lines) {
    if (members.size() < 2) continue;
    std::vector<Box> boxes;
    boxes.reserve(members.size());
    for (std::size_t li : members) boxes.push_back(lines[li].bbox);
    std::vector<std::size_t> reordered;
    reordered.reserve(members.size());
    for (std::size_t k : sort_tb_yx(boxes, order)) {
      reordered.push_back(members[k]);
    }
    members = std::move(reordered);
  }
  return out;
}

namespace {

bool is_full_width(const LayoutRegion& region, double page_width) {
  return region.bbox.x0 <= kGutterWindowLo * page_width &&
         region.bbox.x1 >= kGutterWindowHi * page_width;
}

}  // namespace

ColumnLayout detect_columns(std::span<const LayoutRegion> regions,
                            double page_width) {
  if (!(page_width > 0.0) || !std::isfinite(page_width)) {
    throw ValidationError("page width must be positive and finite");
  }
  ColumnLayout layout;
  layout.slots.assign(regions.size(), ColumnSlot::kFullWidth);

  const double lo = kGutterWindowLo * page_width;
  const double hi = kGutterWindowHi * page_width;
  // Blockers: body regions that are not full-width section breaks.
  std::vector<std::pair<double, double>> blocked;
  for (const LayoutRegion& r : regions) {
    if (is_page_furniture(r.category)) continue;
    if (is_full_width(r, page_width)) continue;
    const double a = std::max(lo, r.bbox.x0);
    const double b = std::min(hi, r.bbox.x1);
    if (a < b) blocked.emplace_back(a, b);
  }
  std::sort(blocked.begin(), blocked.end());
  // Widest free band inside the gutter window.
  double best_width = 0.0;
  double best_center = 0.0;
  double cursor = lo;
  for (const auto& [a, b] : blocked) {
    if (a > cursor) {
      const double width = a - cursor;
      if (width > best_width) {
        best_width = width;
        best_center = 0.5 * (cursor + a);
      }
    }
    cursor = std::max(cursor, b);
  }
  if (hi > cursor && hi - cursor > best_width) {
    best_width = hi - cursor;
    best_center = 0.5 * (cursor + hi);
  }
  if (best_width < kGutterMinWidthRatio * page_width) return layout;

  // Assign sides; require both columns populated.
  bool has_left = false;
  bool has_right = false;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const LayoutRegion& r = regions[i];
    if (is_full_width(r, page_width)) continue;
    if (r.bbox.x_center() < best_center) {
      layout.slots[i] = ColumnSlot::kLeft;
      if (!is_page_furniture(r.category)) has_left = true;
    } else {
      layout.slots[i] = ColumnSlot::kRight;
      if (!is_page_furniture(r.category)) has_right = true;
    }
  }
  if (!has_left || !has_right) {
    layout.slots.assign(regions.size(), ColumnSlot::kFullWidth);
    return layout;
  }
  layout.n_columns = 2;
  layout.split_x = best_center;
  return layout;
}

std::vector<std::size_t> order_regions(std::span<const LayoutRegion> regions,
                                       const OrderConfig& order,
                                       double page_width) {
  std::vector<Box> boxes;
  boxes.reserve(regions.size());
  for (const LayoutRegion& r : regions) boxes.push_back(r.bbox);

  const ColumnLayout columns = detect_columns(regions, page_width);
  if (columns.n_columns == 1) return sort_tb_yx(boxes, order);

  // Section breaks at the y-centers of full-width regions.
  std::vector<std::size_t> breaks;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (columns.slots[i] == ColumnSlot::kFullWidth) breaks.push_back(i);
  }
  std::sort(breaks.begin(), breaks.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(boxes[a].y0, boxes[a].x0, a) <
           std::tie(boxes[b].y0, boxes[b].x0, b);
  });

  const std::size_t n_sections = breaks.size() + 1;
  std::vector<std::vector<std::size_t>> left(n_sections);
  std::vector<std::vector<std::size_t>> right(n_sections);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (columns.slots[i] == ColumnSlot::kFullWidth) continue;
    const double yc = boxes[i].y_center();
    std::size_t section = 0;
    while (section < breaks.size() &&
           yc >= boxes[breaks[section]].y_center()) {
      ++section;
    }
    (columns.slots[i] == ColumnSlot::kLeft ? left : right)[section]
        .push_back(i);
  }

  auto append_sorted = [&](std::vector<std::size_t>& dst,
                           const std::vector<std::size_t>& members) {
    if (members.empty()) return;
    std::vector<Box> member_boxes;
    member_boxes.reserve(members.size());
    for (std::size_t i : members) member_boxes.push_back(boxes[i]);
    for (std::size_t k : sort_tb_yx(member_boxes, order)) {
      dst.push_back(members[k]);
    }
  };

  std::vector<std::size_t> result;
  result.reserve(regions.size());
  for (std::size_t section = 0; section < n_sections; ++section) {
    if (section > 0) result.push_back(breaks[section - 1]);
    append_sorted(result, left[section]);
    append_sorted(result, right[section]);
  }
  return result;
}

namespace {

std::string join_lines(std::span<const TextLine> lines,
                       const std::vector<std::size_t>& members) {
  std::string out;
  for (std::size_t li : members) {
    if (!out.empty() && !lines[li].text.empty()) out.push_back(' ');
    out += lines[li].text;
  }
  return out;
}

}  // namespace

DocumentModel build_document(const PageBundle& bundle,
                             const OrderConfig& order) {
  validate_bundle(bundle);
  DocumentModel doc;
  const std::span<const TextLine> lines(bundle.text_lines);
  const std::span<const LayoutRegion> regions(bundle.regions);
  const LineAssignment assignment =
      assign_text_to_regions(lines, regions, 0.5, order);
  const std::vector<std::size_t> region_order =
      order_regions(regions, order, bundle.page_width);

  // First pass: blocks for non-caption regions, in reading order.
  std::vector<std::size_t> block_region;  // region index per emitted block
  std::vector<Block> blocks;
  for (std::size_t idx : region_order) {
    const LayoutRegion& region = regions[idx];
    if (is_page_furniture(region.category) || is_caption(region.category)) {
      continue;
    }
    const std::vector<std::size_t>& members = assignment.region_lines[idx];
    const std::string text = join_lines(lines, members);
    switch (region.category) {
      case RegionCategory::kTitle:
        if (text.empty()) continue;
        blocks.emplace_back(Heading{1, text});
        break;
      case RegionCategory::kText:
      case RegionCategory::kReference:
      case RegionCategory::kEquation:
        if (text.empty()) continue;
        blocks.emplace_back(Paragraph{text});
        break;
      case RegionCategory::kList: {
        if (members.empty()) continue;
        std::vector<Box> boxes;
        boxes.reserve(members.size());
        for (std::size_t li : members) boxes.push_back(lines[li].bbox);
        const double th = resolve_threshold(boxes, order);
        ListBlock list;
        for (const std::vector<std::size_t>& group : group_lines(boxes, th)) {
          std::vector<std::size_t> item;
          item.reserve(group.size());
          for (std::size_t k : group) item.push_back(members[k]);
          list.items.push_back(join_lines(lines, item));
        }
        blocks.emplace_back(std::move(list));
        break;
      }
      case RegionCategory::kTable: {
        auto it = bundle.tables.find(idx);
        if (it != bundle.tables.end()) {
          blocks.emplace_back(TableBlock{it->second});
        } else if (!members.empty()) {
          // Fallback: one single-column row per assigned line.
          TableGrid grid;
          grid.n_rows = static_cast<int>(members.size());
          grid.n_cols = 1;
          for (std::size_t k = 0; k < members.size(); ++k) {
            Cell cell;
            cell.row = static_cast<int>(k);
            cell.col = 0;
            cell.text = lines[members[k]].text;
            grid.cells.push_back(std::move(cell));
          }
          blocks.emplace_back(TableBlock{std::move(grid)});
        } else {
          doc.warnings.push_back("table region " + std::to_string(idx) +
                                 " has neither grid nor text");
          blocks.emplace_back(FigureBlock{"table", region.bbox});
        }
        break;
      }
      case RegionCategory::kFigure:
        blocks.emplace_back(FigureBlock{"figure", region.bbox});
        break;
      default:
        continue;
    }
    block_region.push_back(idx);
  }

  // Captions attach after the nearest table/figure block (center distance).
  struct CaptionInsert {
    std::size_t after_block;
    std::size_t region;
    Paragraph paragraph;
  };
  std::vector<CaptionInsert> caption_inserts;
  for (std::size_t idx = 0; idx < regions.size(); ++idx) {
    const LayoutRegion& region = regions[idx];
    if (!is_caption(region.category)) continue;
    const std::string text =
        join_lines(lines, assignment.region_lines[idx]);
    if (text.empty()) continue;
    double best_dist = 0.0;
    std::size_t best_block = blocks.size();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const RegionCategory target = regions[block_region[b]].category;
      if (target != RegionCategory::kTable &&
          target != RegionCategory::kFigure) {
        continue;
      }
      const Box& tb = regions[block_region[b]].bbox;
      const double dx = tb.x_center() - region.bbox.x_center();
      const double dy = tb.y_center() - region.bbox.y_center();
      const double dist = dx * dx + dy * dy;
      if (best_block == blocks.size() || dist < best_dist) {
        best_dist = dist;
        best_block = b;
      }
    }
    if (best_block == blocks.size()) {
      // No table or figure on the page: keep the caption in reading order.
      std::size_t position = 0;
      for (std::size_t b = 0; b < block_region.size(); ++b) {
        auto pos_of = [&](std::size_t region_idx) {
          return std::find(region_order.begin(), region_order.end(),
                           region_idx) -
                 region_order.begin();
        };
        if (pos_of(block_region[b]) < pos_of(idx)) position = b + 1;
      }
      caption_inserts.push_back(
          {position == 0 ? blocks.size() + 1 : position - 1, idx,
           Paragraph{text}});
      // after_block == blocks.size()+1 marks "insert at front".
    } else {
      caption_inserts.push_back({best_block, idx, Paragraph{text}});
    }
  }

  // Materialize, inserting captions after their targets in region order.
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b == 0) {
      for (const CaptionInsert& ci : caption_inserts) {
        if (ci.after_block == blocks.size() + 1) {
          doc.blocks.push_back(ci.paragraph);
        }
      }
    }
    doc.blocks.push_back(std::move(blocks[b]));
    for (const CaptionInsert& ci : caption_inserts) {
      if (ci.after_block == b) doc.blocks.push_back(ci.paragraph);
    }
  }
  if (blocks.empty()) {
    for (const CaptionInsert& ci : caption_inserts) {
      doc.blocks.push_back(ci.paragraph);
    }
  }

  // Orphan tail in TB-YX order, one paragraph per line.
  if (!assignment.orphans.empty()) {
    std::vector<Box> boxes;
    boxes.reserve(assignment.orphans.size());
    for (std::size_t li : assignment.orphans) {
      boxes.push_back(lines[li].bbox);
    }
    for (std::size_t k : sort_tb_yx(boxes, order)) {
      const std::string& text = lines[assignment.orphans[k]].text;
      if (!text.empty()) doc.blocks.push_back(Paragraph{text});
    }
  }
  return doc;
}

namespace {

std::string format_bbox(const Box& b) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.1f,%.1f,%.1f,%.1f", b.x0, b.y0, b.x1,
                b.y1);
  return buf;
}

}  // namespace

std::string emit_html(const DocumentModel& doc) {
  std::string out =
      "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"></head>\n"
      "<body>\n";
  for (const Block& block : doc.blocks) {
    if (const auto* h = std::get_if<Heading>(&block)) {
      const int level = std::clamp(h->level, 1, 6);
      out += "<h" + std::to_string(level) + ">" + escape_text(h->text) +
             "</h" + std::to_string(level) + ">\n";
    } else if (const auto* p = std::get_if<Paragraph>(&block)) {
      out += "<p>" + escape_text(p->text) + "</p>\n";
    } else if (const auto* l = std::get_if<ListBlock>(&block)) {
      out += "<ul>";
      for (const std::string& item : l->items) {
        out += "<li>" + escape_text(item) + "</li>";
      }
      out += "</ul>\n";
    } else if (const auto* t = std::get_if<TableBlock>(&block)) {
      out += table_to_html(t->grid) + "\n";
    } else if (const auto* f = std::get_if<FigureBlock>(&block)) {
      out += "<div class=\"figure\" data-bbox=\"" + format_bbox(f->bbox) +
             "\">" + escape_text(f->label) + "</div>\n";
    }
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string table_to_markdown(const TableGrid& grid) {
  validate_grid(grid);
  bool has_span = false;
  for (const Cell& c : grid.cells) {
    if (c.rowspan > 1 || c.colspan > 1) {
      has_span = true;
      break;
    }
  }
  if (has_span || grid.n_rows == 0 || grid.n_cols == 0) {
    return table_to_html(grid);
  }
  std::vector<std::vector<std::string>> matrix(
      grid.n_rows, std::vector<std::string>(grid.n_cols));
  for (const Cell& c : grid.cells) matrix[c.row][c.col] = c.text;
  auto md_escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '|') out += "\\|";
      else if (c == '\n') out.push_back(' ');
      else out.push_back(c);
    }
    return out;
  };
  std::string out;
  for (int r = 0; r < grid.n_rows; ++r) {
    out += "|";
    for (int c = 0; c < grid.n_cols; ++c) {
      out += " " + md_escape(matrix[r][c]) + " |";
    }
    out += "\n";
    if (r == 0) {
      out += "|";
      for (int c = 0; c < grid.n_cols; ++c) out += " --- |";
      out += "\n";
    }
  }
  return out;
}

std::string emit_markdown(const DocumentModel& doc) {
  std::string out;
  bool first = true;
  for (const Block& block : doc.blocks) {
    if (!first) out += "\n";
    first = false;
    if (const auto* h = std::get_if<Heading>(&block)) {
      const int level = std::clamp(h->level, 1, 6);
      out.append(level, '#');
      out += " " + h->text + "\n";
    } else if (const auto* p = std::get_if<Paragraph>(&block)) {
      out += p->text + "\n";
    } else if (const auto* l = std::get_if<ListBlock>(&block)) {
      for (const std::string& item : l->items) out += "- " + item + "\n";
    } else if (const auto* t = std::get_if<TableBlock>(&block)) {
      std::string md = table_to_markdown(t->grid);
      out += md;
      if (md.empty() || md.back() != '\n') out += "\n";
    } else if (const auto* f = std::get_if<FigureBlock>(&block)) {
      out += "[" + f->label + "]\n";
    }
  }
  return out;
}

}  // namespace docstruct
