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

#include "docstruct/teds.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

#include "docstruct/error.hpp"
#include "docstruct/html_table.hpp"

namespace docstruct {

std::size_t count_nodes(const TedsNode& tree) {
  std::size_t n = 1;
  for (const TedsNode& c : tree.children) n += count_nodes(c);
  return n;
}

TedsNode build_tree(const TableGrid& grid) {
  validate_grid(grid);
  std::vector<std::vector<const Cell*>> rows(grid.n_rows);
  {
    std::vector<const Cell*> sorted;
    sorted.reserve(grid.cells.size());
    for (const Cell& c : grid.cells) sorted.push_back(&c);
    std::sort(sorted.begin(), sorted.end(),
              [](const Cell* a, const Cell* b) {
                return std::tie(a->row, a->col) < std::tie(b->row, b->col);
              });
    for (const Cell* c : sorted) rows[c->row].push_back(c);
  }
  auto make_row = [](const std::vector<const Cell*>& row) {
    TedsNode tr;
    tr.tag = "tr";
    for (const Cell* c : row) {
      TedsNode td;
      td.tag = "td";
      td.rowspan = c->rowspan;
      td.colspan = c->colspan;
      td.text = c->text;
      tr.children.push_back(std::move(td));
    }
    return tr;
  };
  TedsNode root;
  root.tag = "table";
  if (grid.header_rows > 0) {
    TedsNode thead;
    thead.tag = "thead";
    for (int r = 0; r < grid.header_rows; ++r) {
      thead.children.push_back(make_row(rows[r]));
    }
    root.children.push_back(std::move(thead));
  }
  if (grid.n_rows > grid.header_rows) {
    TedsNode tbody;
    tbody.tag = "tbody";
    for (int r = grid.header_rows; r < grid.n_rows; ++r) {
      tbody.children.push_back(make_row(rows[r]));
    }
    root.children.push_back(std::move(tbody));
  }
  return root;
}

TedsNode build_tree(std::string_view html) {
  return build_tree(parse_html_table(html));
}

namespace {

// Invalid bytes decode to distinct out-of-range units so they never match
// a real codepoint.
std::vector<std::uint32_t> utf8_units(std::string_view s) {
  std::vector<std::uint32_t> units;
  units.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (b < 0x80) { len = 1; cp = b; }
    else if ((b & 0xE0) == 0xC0) { len = 2; cp = b & 0x1F; }
    else if ((b & 0xF0) == 0xE0) { len = 3; cp = b & 0x0F; }
    else if ((b & 0xF8) == 0xF0) { len = 4; cp = b & 0x07; }
    else { units.push_back(0x110000u + b); ++i; continue; }
    if (i + len > s.size()) { units.push_back(0x110000u + b); ++i; continue; }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char cont = static_cast<unsigned char>(s[i + k]);
      if ((cont & 0xC0) != 0x80) { ok = false; break; }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (!ok) { units.push_back(0x110000u + b); ++i; continue; }
    units.push_back(cp);
    i += len;
  }
  return units;
}

}  // namespace

double normalized_levenshtein(std::string_view a, std::string_view b) {
  const std::vector<std::uint32_t> ua = utf8_units(a);
  const std::vector<std::uint32_t> ub = utf8_units(b);
  const std::size_t m = ua.size();
  const std::size_t n = ub.size();
  if (m == 0 && n == 0) return 0.0;
  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t sub = prev[j - 1] + (ua[i - 1] == ub[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[n]) / static_cast<double>(std::max(m, n));
}

namespace {

// Postorder flattening with leftmost-leaf indices and LR keyroots
// (Zhang-Shasha decomposition).
struct FlatTree {
  std::vector<const TedsNode*> post;
  std::vector<int> lml;
  std::vector<int> keyroots;
};

int flatten_visit(const TedsNode& node, FlatTree& out) {
  int first_leaf = -1;
  for (const TedsNode& c : node.children) {
    const int l = flatten_visit(c, out);
    if (first_leaf < 0) first_leaf = l;
  }
  out.post.push_back(&node);
  const int self = static_cast<int>(out.post.size()) - 1;
  out.lml.push_back(first_leaf < 0 ? self : first_leaf);
  return out.lml.back();
}

FlatTree flatten(const TedsNode& root) {
  FlatTree out;
  flatten_visit(root, out);
  std::vector<char> seen(out.post.size(), 0);
  for (int i = static_cast<int>(out.post.size()) - 1; i >= 0; --i) {
    if (!seen[out.lml[i]]) {
      seen[out.lml[i]] = 1;
      out.keyroots.push_back(i);
    }
  }
  std::sort(out.keyroots.begin(), out.keyroots.end());
  return out;
}

double rename_cost(const TedsNode& a, const TedsNode& b,
                   const CostConfig& cfg) {
  if (a.tag != b.tag || a.colspan != b.colspan || a.rowspan != b.rowspan) {
    return cfg.structural_mismatch_cost;
  }
  if (a.tag == "td" && cfg.content_cost_mode == ContentCostMode::kLevenshtein) {
    return normalized_levenshtein(a.text, b.text);
  }
  return 0.0;
}

}  // namespace

double tree_edit_distance(const TedsNode& t1, const TedsNode& t2,
                          const CostConfig& cost) {
  if (cost.structural_mismatch_cost < 0.0) {
    throw ValidationError("edit costs must be >= 0");
  }
  const FlatTree f1 = flatten(t1);
  const FlatTree f2 = flatten(t2);
  const int n1 = static_cast<int>(f1.post.size());
  const int n2 = static_cast<int>(f2.post.size());
  const double unit = cost.structural_mismatch_cost;

  // Rename costs computed once per node pair; keyroot subproblems reuse
  // them freely.
  std::vector<double> rename(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      rename[static_cast<std::size_t>(i) * n2 + j] =
          rename_cost(*f1.post[i], *f2.post[j], cost);
    }
  }

  std::vector<double> td(static_cast<std::size_t>(n1) * n2, 0.0);
  std::vector<std::vector<double>> fd;
  for (const int i : f1.keyroots) {
    for (const int j : f2.keyroots) {
      const int ioff = f1.lml[i] - 1;
      const int joff = f2.lml[j] - 1;
      const int m = i - ioff;  // subforest sizes
      const int n = j - joff;
      fd.assign(m + 1, std::vector<double>(n + 1, 0.0));
      for (int x = 1; x <= m; ++x) fd[x][0] = fd[x - 1][0] + unit;
      for (int y = 1; y <= n; ++y) fd[0][y] = fd[0][y - 1] + unit;
      for (int x = 1; x <= m; ++x) {
        const int node1 = x + ioff;
        for (int y = 1; y <= n; ++y) {
          const int node2 = y + joff;
          if (f1.lml[node1] == f1.lml[i] && f2.lml[node2] == f2.lml[j]) {
            const double r =
                rename[static_cast<std::size_t>(node1) * n2 + node2];
            fd[x][y] = std::min({fd[x - 1][y] + unit, fd[x][y - 1] + unit,
                                 fd[x - 1][y - 1] + r});
            td[static_cast<std::size_t>(node1) * n2 + node2] = fd[x][y];
          } else {
            const int p = f1.lml[node1] - 1 - ioff;
            const int q = f2.lml[node2] - 1 - joff;
            fd[x][y] =
                std::min({fd[x - 1][y] + unit, fd[x][y - 1] + unit,
                          fd[p][q] +
                              td[static_cast<std::size_t>(node1) * n2 + node2]});
          }
        }
      }
    }
  }
  return td[static_cast<std::size_t>(n1 - 1) * n2 + (n2 - 1)];
}

namespace {

double teds_score(const TedsNode& pred, const TedsNode& gt,
                  ContentCostMode mode) {
  const std::size_t n = std::max(count_nodes(pred), count_nodes(gt));
  if (n == 0) return 1.0;
  CostConfig cfg;
  cfg.content_cost_mode = mode;
  const double dist = tree_edit_distance(pred, gt, cfg);
  const double score = 1.0 - dist / static_cast<double>(n);
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace

double teds(const TedsNode& pred, const TedsNode& gt) {
  return teds_score(pred, gt, ContentCostMode::kLevenshtein);
}

double teds_struct(const TedsNode& pred, const TedsNode& gt) {
  return teds_score(pred, gt, ContentCostMode::kIgnored);
}

namespace {

TedsResult teds_strings(std::string_view pred_html, std::string_view gt_html,
                        ContentCostMode mode) {
  const TedsNode gt_tree = build_tree(gt_html);  // gt failure is hard
  TedsNode pred_tree;
  try {
    pred_tree = build_tree(pred_html);
  } catch (const Error&) {
    return {0.0, true};
  }
  return {teds_score(pred_tree, gt_tree, mode), false};
}

}  // namespace

TedsResult teds(std::string_view pred_html, std::string_view gt_html) {
  return teds_strings(pred_html, gt_html, ContentCostMode::kLevenshtein);
}

TedsResult teds_struct(std::string_view pred_html, std::string_view gt_html) {
  return teds_strings(pred_html, gt_html, ContentCostMode::kIgnored);
}

}  // namespace docstruct
