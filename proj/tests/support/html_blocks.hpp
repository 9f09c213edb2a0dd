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

// Test-side reparser for documents produced by emit_html: extracts blocks
// in order with their text so round-trip fidelity can be asserted.

#pragma once

#include <string>
#include <vector>

#include "docstruct/html_table.hpp"

namespace testsupport {

struct ParsedBlock {
  std::string kind;  // "h1".."h6", "p", "ul", "table", "figure"
  std::string text;  // decoded text (all cells/items joined with spaces)
};

inline std::vector<ParsedBlock> parse_emitted_html(const std::string& html) {
  std::vector<ParsedBlock> blocks;
  const std::size_t body = html.find("<body>");
  std::size_t pos = body == std::string::npos ? 0 : body;
  const std::size_t end = html.find("</body>");
  auto text_of = [](const std::string& fragment) {
    std::string out;
    bool in_tag = false;
    for (char c : fragment) {
      if (c == '<') {
        in_tag = true;
      } else if (c == '>') {
        in_tag = false;
        // Tags separate text runs (e.g. </li><li>).
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
      } else if (!in_tag) {
        out.push_back(c);
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    std::size_t lead = 0;
    while (lead < out.size() && out[lead] == ' ') ++lead;
    return docstruct::decode_entities(out.substr(lead));
  };
  while (true) {
    const std::size_t lt = html.find('<', pos);
    if (lt == std::string::npos || (end != std::string::npos && lt >= end)) {
      break;
    }
    auto closes_at = [&](const std::string& close) {
      return html.find(close, lt);
    };
    if (html.compare(lt, 2, "<h") == 0 && lt + 3 < html.size() &&
        html[lt + 2] >= '1' && html[lt + 2] <= '6') {
      const std::string close = std::string("</h") + html[lt + 2] + ">";
      const std::size_t c = closes_at(close);
      blocks.push_back({std::string("h") + html[lt + 2],
                        text_of(html.substr(lt, c - lt))});
      pos = c + close.size();
    } else if (html.compare(lt, 3, "<p>") == 0) {
      const std::size_t c = closes_at("</p>");
      blocks.push_back({"p", text_of(html.substr(lt, c - lt))});
      pos = c + 4;
    } else if (html.compare(lt, 4, "<ul>") == 0) {
      const std::size_t c = closes_at("</ul>");
      blocks.push_back({"ul", text_of(html.substr(lt, c - lt))});
      pos = c + 5;
    } else if (html.compare(lt, 7, "<table>") == 0) {
      const std::size_t c = closes_at("</table>");
      const std::string fragment = html.substr(lt, c + 8 - lt);
      const docstruct::TableGrid grid = docstruct::parse_html_table(fragment);
      std::string text;
      for (const docstruct::Cell& cell : grid.cells) {
        if (!text.empty() && !cell.text.empty()) text.push_back(' ');
        text += cell.text;
      }
      blocks.push_back({"table", text});
      pos = c + 8;
    } else if (html.compare(lt, 4, "<div") == 0) {
      const std::size_t c = closes_at("</div>");
      blocks.push_back({"figure", text_of(html.substr(lt, c - lt))});
      pos = c + 6;
    } else {
      pos = lt + 1;
    }
  }
  return blocks;
}

}  // namespace testsupport
