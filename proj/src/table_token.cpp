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

#include "docstruct/table_token.hpp"

#include <cctype>
#include <string_view>

#include "docstruct/error.hpp"

namespace docstruct {

namespace {

bool is_attr(TokenKind k) {
  return k == TokenKind::kTdAttrRowspan || k == TokenKind::kTdAttrColspan;
}

bool is_cell_open(TokenKind k) {
  return k == TokenKind::kTdOpen || k == TokenKind::kTdMerged ||
         k == TokenKind::kTdOpenBracket;
}

[[noreturn]] void fail(const std::string& msg, std::size_t index) {
  throw ParseError("token " + std::to_string(index) + ": " + msg, index);
}

// Nesting scopes tracked while scanning a sequence.
enum class Scope { kTable, kSection, kRow, kPlainCell, kBracketCell };

}  // namespace

void validate_sequence(const TokenSequence& seq) {
  std::vector<Scope> stack;
  bool table_seen = false;
  bool table_closed = false;
  bool top_level_content = false;
  bool saw_rowspan = false;
  bool saw_colspan = false;

  auto top_is = [&](Scope s) { return !stack.empty() && stack.back() == s; };
  auto in_row_scope = [&] {
    return stack.empty() || stack.back() == Scope::kTable ||
           stack.back() == Scope::kSection;
  };

  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    const StructureToken& tok = seq.tokens[i];
    if (table_closed) fail("content after table close", i);
    const TokenKind k = tok.kind;
    if (is_attr(k)) {
      if (!top_is(Scope::kBracketCell)) {
        fail("span attribute outside a bracket cell", i);
      }
      if (tok.span < 2) fail("span attribute value must be >= 2", i);
      bool& seen =
          (k == TokenKind::kTdAttrRowspan) ? saw_rowspan : saw_colspan;
      if (seen) fail("duplicate span attribute in cell", i);
      seen = true;
      continue;
    }
    if (tok.span != 0) fail("non-attribute token carries a span value", i);
    switch (k) {
      case TokenKind::kTableOpen:
        if (!stack.empty()) fail("nested table", i);
        if (table_seen || top_level_content) {
          fail("table must be the single root element", i);
        }
        table_seen = true;
        stack.push_back(Scope::kTable);
        break;
      case TokenKind::kTableClose:
        if (!top_is(Scope::kTable)) fail("mismatched table close", i);
        stack.pop_back();
        table_closed = true;
        break;
      case TokenKind::kTheadOpen:
      case TokenKind::kTbodyOpen:
        if (!stack.empty() && stack.back() != Scope::kTable) {
          fail("section must sit directly inside the table", i);
        }
        if (stack.empty()) {
          if (table_seen) fail("content after table close", i);
          top_level_content = true;
        }
        stack.push_back(Scope::kSection);
        break;
      case TokenKind::kTheadClose:
      case TokenKind::kTbodyClose:
        if (!top_is(Scope::kSection)) fail("mismatched section close", i);
        stack.pop_back();
        break;
      case TokenKind::kTrOpen:
        if (!in_row_scope()) fail("row must sit outside any open cell", i);
        if (stack.empty()) {
          if (table_seen) fail("content after table close", i);
          top_level_content = true;
        }
        stack.push_back(Scope::kRow);
        break;
      case TokenKind::kTrClose:
        if (!top_is(Scope::kRow)) fail("mismatched row close", i);
        stack.pop_back();
        break;
      case TokenKind::kTdOpen:
        if (!top_is(Scope::kRow)) fail("cell outside any row", i);
        // Structure tokens carry no content, so the close must follow.
        if (i + 1 >= seq.tokens.size() ||
            seq.tokens[i + 1].kind != TokenKind::kTdClose) {
          fail("td open must be immediately followed by td close", i);
        }
        if (seq.form == VocabularyForm::kMerged) {
          fail("split-form cell pair inside merged-form sequence", i);
        }
        stack.push_back(Scope::kPlainCell);
        break;
      case TokenKind::kTdOpenBracket:
        if (!top_is(Scope::kRow)) fail("cell outside any row", i);
        stack.push_back(Scope::kBracketCell);
        saw_rowspan = saw_colspan = false;
        break;
      case TokenKind::kTdMerged:
        if (!top_is(Scope::kRow)) fail("cell outside any row", i);
        if (seq.form == VocabularyForm::kSplit) {
          fail("merged cell token inside split-form sequence", i);
        }
        break;
      case TokenKind::kTdClose:
        if (!top_is(Scope::kPlainCell) && !top_is(Scope::kBracketCell)) {
          fail("mismatched td close", i);
        }
        stack.pop_back();
        break;
      default:
        fail("unknown token kind", i);
    }
  }
  if (!stack.empty()) fail("unclosed element at end of sequence",
                           seq.tokens.size());
}

std::size_t count_cells(const TokenSequence& seq) {
  std::size_t n = 0;
  for (const StructureToken& t : seq.tokens) {
    if (is_cell_open(t.kind)) ++n;
  }
  return n;
}

TokenSequence merge_td_tokens(const TokenSequence& seq) {
  if (seq.form != VocabularyForm::kSplit) {
    throw ValidationError("merge_td_tokens expects a split-form sequence");
  }
  validate_sequence(seq);
  TokenSequence out;
  out.form = VocabularyForm::kMerged;
  out.tokens.reserve(seq.tokens.size());
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (seq.tokens[i].kind == TokenKind::kTdOpen &&
        i + 1 < seq.tokens.size() &&
        seq.tokens[i + 1].kind == TokenKind::kTdClose) {
      out.tokens.push_back({TokenKind::kTdMerged, 0});
      ++i;
    } else {
      out.tokens.push_back(seq.tokens[i]);
    }
  }
  return out;
}

TokenSequence split_td_tokens(const TokenSequence& seq) {
  if (seq.form != VocabularyForm::kMerged) {
    throw ValidationError("split_td_tokens expects a merged-form sequence");
  }
  validate_sequence(seq);
  TokenSequence out;
  out.form = VocabularyForm::kSplit;
  out.tokens.reserve(seq.tokens.size());
  for (const StructureToken& t : seq.tokens) {
    if (t.kind == TokenKind::kTdMerged) {
      out.tokens.push_back({TokenKind::kTdOpen, 0});
      out.tokens.push_back({TokenKind::kTdClose, 0});
    } else {
      out.tokens.push_back(t);
    }
  }
  return out;
}

TokenSequence normalize_merged(const TokenSequence& seq) {
  if (seq.form == VocabularyForm::kMerged) {
    validate_sequence(seq);
    return seq;
  }
  return merge_td_tokens(seq);
}

std::vector<std::string> tokens_to_strings(const TokenSequence& seq) {
  validate_sequence(seq);
  std::vector<std::string> out;
  out.reserve(seq.tokens.size());
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    const StructureToken& t = seq.tokens[i];
    switch (t.kind) {
      case TokenKind::kTableOpen: out.emplace_back("<table>"); break;
      case TokenKind::kTableClose: out.emplace_back("</table>"); break;
      case TokenKind::kTheadOpen: out.emplace_back("<thead>"); break;
      case TokenKind::kTheadClose: out.emplace_back("</thead>"); break;
      case TokenKind::kTbodyOpen: out.emplace_back("<tbody>"); break;
      case TokenKind::kTbodyClose: out.emplace_back("</tbody>"); break;
      case TokenKind::kTrOpen: out.emplace_back("<tr>"); break;
      case TokenKind::kTrClose: out.emplace_back("</tr>"); break;
      case TokenKind::kTdOpen: out.emplace_back("<td>"); break;
      case TokenKind::kTdClose: out.emplace_back("</td>"); break;
      case TokenKind::kTdMerged: out.emplace_back("<td></td>"); break;
      case TokenKind::kTdOpenBracket: out.emplace_back("<td"); break;
      case TokenKind::kTdAttrRowspan:
        out.push_back(" rowspan=\"" + std::to_string(t.span) + "\"");
        break;
      case TokenKind::kTdAttrColspan:
        out.push_back(" colspan=\"" + std::to_string(t.span) + "\"");
        break;
    }
    // Close the bracket group once the attr run ends.
    const bool in_group = t.kind == TokenKind::kTdOpenBracket || is_attr(t.kind);
    if (in_group) {
      const bool next_is_attr =
          i + 1 < seq.tokens.size() && is_attr(seq.tokens[i + 1].kind);
      if (!next_is_attr) out.emplace_back(">");
    }
  }
  return out;
}

namespace {

// Parses span attribute strings like " rowspan=\"12\"" (leading space and
// quotes optional). Returns the numeric value or -1 when s is not an attr.
int parse_attr_string(std::string_view s, std::string_view name) {
  std::size_t p = 0;
  while (p < s.size() && s[p] == ' ') ++p;
  if (s.compare(p, name.size(), name) != 0) return -1;
  p += name.size();
  if (p >= s.size() || s[p] != '=') return -1;
  ++p;
  char quote = 0;
  if (p < s.size() && (s[p] == '"' || s[p] == '\'')) quote = s[p++];
  std::size_t start = p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) return -2;  // attr shape but value missing
  long value = 0;
  for (std::size_t q = start; q < p; ++q) {
    value = value * 10 + (s[q] - '0');
    if (value > 1000000) return -2;
  }
  if (quote != 0) {
    if (p >= s.size() || s[p] != quote) return -2;
    ++p;
  }
  if (p != s.size()) return -2;
  return static_cast<int>(value);
}

}  // namespace

TokenSequence strings_to_tokens(const std::vector<std::string>& strings) {
  TokenSequence seq;
  bool merged_seen = false;
  bool prev_opens_bracket_group = false;
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const std::string& s = strings[i];
    const bool was_in_group = prev_opens_bracket_group;
    prev_opens_bracket_group = false;
    if (s == "<table>") seq.tokens.push_back({TokenKind::kTableOpen, 0});
    else if (s == "</table>") seq.tokens.push_back({TokenKind::kTableClose, 0});
    else if (s == "<thead>") seq.tokens.push_back({TokenKind::kTheadOpen, 0});
    else if (s == "</thead>") seq.tokens.push_back({TokenKind::kTheadClose, 0});
    else if (s == "<tbody>") seq.tokens.push_back({TokenKind::kTbodyOpen, 0});
    else if (s == "</tbody>") seq.tokens.push_back({TokenKind::kTbodyClose, 0});
    else if (s == "<tr>") seq.tokens.push_back({TokenKind::kTrOpen, 0});
    else if (s == "</tr>") seq.tokens.push_back({TokenKind::kTrClose, 0});
    else if (s == "<td>") seq.tokens.push_back({TokenKind::kTdOpen, 0});
    else if (s == "</td>") seq.tokens.push_back({TokenKind::kTdClose, 0});
    else if (s == "<td></td>") {
      seq.tokens.push_back({TokenKind::kTdMerged, 0});
      merged_seen = true;
    } else if (s == "<td") {
      seq.tokens.push_back({TokenKind::kTdOpenBracket, 0});
      prev_opens_bracket_group = true;
    } else if (s == ">") {
      if (!was_in_group) {
        throw ParseError("structure token " + std::to_string(i) +
                             ": '>' outside a bracket cell group",
                         i);
      }
      // Terminator of the bracket group; no in-memory token.
    } else {
      int rs = parse_attr_string(s, "rowspan");
      int cs = parse_attr_string(s, "colspan");
      if (rs == -1 && cs == -1) {
        throw ParseError("structure token " + std::to_string(i) +
                             ": unrecognized token '" + s + "'",
                         i);
      }
      if (rs == -2 || cs == -2) {
        throw ParseError("structure token " + std::to_string(i) +
                             ": malformed span attribute '" + s + "'",
                         i);
      }
      if (!was_in_group) {
        throw ParseError("structure token " + std::to_string(i) +
                             ": span attribute outside a bracket cell",
                         i);
      }
      const int value = rs >= 0 ? rs : cs;
      if (value == 0) {
        throw ParseError("structure token " + std::to_string(i) +
                             ": span value must be >= 1",
                         i);
      }
      if (value >= 2) {
        seq.tokens.push_back({rs >= 0 ? TokenKind::kTdAttrRowspan
                                      : TokenKind::kTdAttrColspan,
                              value});
      }
      // A span of 1 is a no-op attribute and is dropped.
      prev_opens_bracket_group = true;
    }
  }
  seq.form = merged_seen ? VocabularyForm::kMerged : VocabularyForm::kSplit;
  validate_sequence(seq);
  return seq;
}

}  // namespace docstruct
