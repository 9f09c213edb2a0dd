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

#include "docstruct/html_table.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <utility>
#include <vector>

#include "docstruct/error.hpp"
#include "grid_builder.hpp"

namespace docstruct {

namespace {

void append_utf8(std::string& out, unsigned long cp) {
  if (cp <= 0x7F) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes the entity starting at s[pos] ('&'). Returns the decoded text and
// the number of input bytes consumed, or nullopt for a literal '&'.
std::optional<std::pair<std::string, std::size_t>> decode_one_entity(
    std::string_view s, std::size_t pos) {
  const std::size_t semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 32) return std::nullopt;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body == "amp") return std::make_pair(std::string("&"), semi - pos + 1);
  if (body == "lt") return std::make_pair(std::string("<"), semi - pos + 1);
  if (body == "gt") return std::make_pair(std::string(">"), semi - pos + 1);
  if (body == "quot") return std::make_pair(std::string("\""), semi - pos + 1);
  if (body == "apos") return std::make_pair(std::string("'"), semi - pos + 1);
  if (body.size() >= 2 && body[0] == '#') {
    unsigned long cp = 0;
    bool ok = true;
    if (body[1] == 'x' || body[1] == 'X') {
      if (body.size() < 3) return std::nullopt;
      for (std::size_t i = 2; i < body.size() && ok; ++i) {
        const char c = body[i];
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else { ok = false; break; }
        cp = cp * 16 + digit;
        if (cp > 0x10FFFF) ok = false;
      }
    } else {
      for (std::size_t i = 1; i < body.size() && ok; ++i) {
        const char c = body[i];
        if (c < '0' || c > '9') { ok = false; break; }
        cp = cp * 10 + (c - '0');
        if (cp > 0x10FFFF) ok = false;
      }
    }
    if (ok && cp != 0 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
      std::string decoded;
      append_utf8(decoded, cp);
      return std::make_pair(decoded, semi - pos + 1);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      if (auto hit = decode_one_entity(text, i)) {
        out += hit->first;
        i += hit->second;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

struct Tag {
  std::string name;          // lowercased
  bool closing = false;
  bool self_closing = false;
  int rowspan = 1;
  int colspan = 1;
  std::size_t offset = 0;    // byte offset of '<'
};

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

int parse_span_value(std::string_view value, std::size_t offset,
                     std::string_view attr) {
  if (value.empty()) {
    throw ParseError("empty " + std::string(attr) + " value", offset);
  }
  long v = 0;
  for (char c : value) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("non-numeric " + std::string(attr) + " value '" +
                           std::string(value) + "'",
                       offset);
    }
    v = v * 10 + (c - '0');
    if (v > detail::GridBuilder::kMaxSpan) {
      throw StructureError(std::string(attr) + " exceeds supported maximum",
                           offset);
    }
  }
  if (v < 1) {
    throw ParseError(std::string(attr) + " value must be >= 1", offset);
  }
  return static_cast<int>(v);
}

// Lexes html into tag and text events.
class HtmlLexer {
public:
  explicit HtmlLexer(std::string_view s) : s_(s) {}

  bool at_end() const { return pos_ >= s_.size(); }
  std::size_t pos() const { return pos_; }

  // Text up to the next '<' (may be empty).
  std::string_view next_text() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '<') ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // Tag/comment/declaration at pos_ (s_[pos_] == '<'). Comments and
  // declarations are skipped; returns nullopt for them and for a stray '<'
  // that opens no tag (consumed as text by the caller).
  std::optional<Tag> next_tag() {
    const std::size_t start = pos_;
    if (s_.compare(pos_, 4, "<!--") == 0) {
      const std::size_t end = s_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) {
        throw StructureError("unterminated comment", start);
      }
      pos_ = end + 3;
      return std::nullopt;
    }
    if (pos_ + 1 < s_.size() && (s_[pos_ + 1] == '!' || s_[pos_ + 1] == '?')) {
      const std::size_t end = s_.find('>', pos_);
      if (end == std::string_view::npos) {
        throw StructureError("unterminated declaration", start);
      }
      pos_ = end + 1;
      return std::nullopt;
    }
    std::size_t p = pos_ + 1;
    Tag tag;
    tag.offset = start;
    if (p < s_.size() && s_[p] == '/') {
      tag.closing = true;
      ++p;
    }
    std::size_t name_start = p;
    while (p < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p]))) {
      ++p;
    }
    if (p == name_start) {
      // '<' that opens no element: emit as literal text.
      ++pos_;
      return Tag{"<literal", false, false, 1, 1, start};
    }
    tag.name = to_lower(s_.substr(name_start, p - name_start));
    // Attributes.
    while (true) {
      while (p < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[p]))) {
        ++p;
      }
      if (p >= s_.size()) throw StructureError("unterminated tag", start);
      if (s_[p] == '>') { ++p; break; }
      if (s_[p] == '/') {
        ++p;
        if (p >= s_.size() || s_[p] != '>') {
          throw StructureError("malformed tag", start);
        }
        tag.self_closing = true;
        ++p;
        break;
      }
      const std::size_t attr_start = p;
      while (p < s_.size() && s_[p] != '=' && s_[p] != '>' && s_[p] != '/' &&
             !std::isspace(static_cast<unsigned char>(s_[p]))) {
        ++p;
      }
      const std::string attr_name =
          to_lower(s_.substr(attr_start, p - attr_start));
      std::string_view value;
      while (p < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[p]))) {
        ++p;
      }
      if (p < s_.size() && s_[p] == '=') {
        ++p;
        while (p < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[p]))) {
          ++p;
        }
        if (p < s_.size() && (s_[p] == '"' || s_[p] == '\'')) {
          const char quote = s_[p++];
          const std::size_t vstart = p;
          while (p < s_.size() && s_[p] != quote) ++p;
          if (p >= s_.size()) {
            throw StructureError("unterminated attribute value", start);
          }
          value = s_.substr(vstart, p - vstart);
          ++p;
        } else {
          const std::size_t vstart = p;
          while (p < s_.size() && s_[p] != '>' && s_[p] != '/' &&
                 !std::isspace(static_cast<unsigned char>(s_[p]))) {
            ++p;
          }
          value = s_.substr(vstart, p - vstart);
        }
      }
      if (attr_name == "rowspan") {
        tag.rowspan = parse_span_value(value, start, "rowspan");
      } else if (attr_name == "colspan") {
        tag.colspan = parse_span_value(value, start, "colspan");
      }
    }
    pos_ = p;
    return tag;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

TableGrid parse_html_table(std::string_view html) {
  HtmlLexer lexer(html);

  // Skip everything before the first <table>.
  bool table_found = false;
  while (!lexer.at_end()) {
    lexer.next_text();
    if (lexer.at_end()) break;
    auto tag = lexer.next_tag();
    if (tag && !tag->closing && tag->name == "table") {
      table_found = true;
      break;
    }
  }
  if (!table_found) throw ParseError("no table element in input");

  detail::GridBuilder builder;
  bool in_thead = false;
  std::string section;       // "thead" / "tbody" / "" when none open
  bool in_row = false;
  bool in_cell = false;
  int cell_rowspan = 1;
  int cell_colspan = 1;
  std::string cell_text;

  auto close_cell = [&] {
    if (!in_cell) return;
    builder.place_cell(cell_rowspan, cell_colspan,
                       decode_entities(cell_text));
    in_cell = false;
    cell_text.clear();
  };
  auto close_row = [&] {
    close_cell();
    in_row = false;
  };
  auto close_section = [&] {
    close_row();
    section.clear();
    in_thead = false;
  };

  while (true) {
    const std::string_view text = lexer.next_text();
    if (in_cell) cell_text += text;
    if (lexer.at_end()) {
      throw StructureError("unexpected end of input inside table",
                           html.size());
    }
    auto maybe_tag = lexer.next_tag();
    if (!maybe_tag) continue;  // comment / declaration
    Tag& tag = *maybe_tag;
    if (tag.name == "<literal") {
      if (in_cell) cell_text.push_back('<');
      continue;
    }

    const bool known = tag.name == "table" || tag.name == "thead" ||
                       tag.name == "tbody" || tag.name == "tr" ||
                       tag.name == "td" || tag.name == "th";
    if (!known) continue;  // inline markup stripped, text kept

    if (!tag.closing) {
      if (tag.name == "table") {
        throw StructureError("nested table", tag.offset);
      }
      if (tag.name == "thead" || tag.name == "tbody") {
        close_section();
        section = tag.name;
        in_thead = tag.name == "thead";
        if (tag.self_closing) close_section();
      } else if (tag.name == "tr") {
        close_row();
        in_row = true;
        builder.open_row(in_thead);
        if (tag.self_closing) close_row();
      } else {  // td / th
        close_cell();
        if (!in_row) {
          throw StructureError("cell outside any row", tag.offset);
        }
        in_cell = true;
        cell_rowspan = tag.rowspan;
        cell_colspan = tag.colspan;
        if (tag.self_closing) close_cell();
      }
    } else {
      if (tag.name == "table") {
        close_section();
        return builder.finish();
      }
      if (tag.name == "thead" || tag.name == "tbody") {
        if (section != tag.name) {
          throw StructureError("mismatched </" + tag.name + ">", tag.offset);
        }
        close_section();
      } else if (tag.name == "tr") {
        if (!in_row) {
          throw StructureError("mismatched </tr>", tag.offset);
        }
        close_row();
      } else {  // td / th close both cell forms
        if (!in_cell) {
          throw StructureError("mismatched </" + tag.name + ">", tag.offset);
        }
        close_cell();
      }
    }
  }
}

std::string table_to_html(const TableGrid& grid) {
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
  std::string out = "<table>";
  auto emit_row = [&](const std::vector<const Cell*>& row) {
    out += "<tr>";
    for (const Cell* c : row) {
      out += "<td";
      if (c->rowspan >= 2) {
        out += " rowspan=\"" + std::to_string(c->rowspan) + "\"";
      }
      if (c->colspan >= 2) {
        out += " colspan=\"" + std::to_string(c->colspan) + "\"";
      }
      out += ">";
      out += escape_text(c->text);
      out += "</td>";
    }
    out += "</tr>";
  };
  if (grid.header_rows > 0) {
    out += "<thead>";
    for (int r = 0; r < grid.header_rows; ++r) emit_row(rows[r]);
    out += "</thead>";
  }
  out += "<tbody>";
  for (int r = grid.header_rows; r < grid.n_rows; ++r) emit_row(rows[r]);
  out += "</tbody>";
  out += "</table>";
  return out;
}

}  // namespace docstruct
