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

#include "docstruct/error.hpp"
#include "docstruct/table_grid.hpp"
#include "docstruct/table_token.hpp"
#include "doctest.h"
#include "support/random_gen.hpp"

using docstruct::StructureToken;
using docstruct::TokenKind;
using docstruct::TokenSequence;
using docstruct::VocabularyForm;

namespace {

TokenSequence seq_of(std::vector<StructureToken> tokens,
                     VocabularyForm form = VocabularyForm::kSplit) {
  TokenSequence s;
  s.tokens = std::move(tokens);
  s.form = form;
  return s;
}

std::size_t count_plain_cells(const TokenSequence& split_seq) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < split_seq.tokens.size(); ++i) {
    if (split_seq.tokens[i].kind == TokenKind::kTdOpen &&
        split_seq.tokens[i + 1].kind == TokenKind::kTdClose) {
      ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("merge collapses the plain cell pair") {
  const TokenSequence seq = seq_of({{TokenKind::kTrOpen, 0},
                                    {TokenKind::kTdOpen, 0},
                                    {TokenKind::kTdClose, 0},
                                    {TokenKind::kTrClose, 0}});
  const TokenSequence merged = docstruct::merge_td_tokens(seq);
  CHECK(merged.form == VocabularyForm::kMerged);
  REQUIRE(merged.tokens.size() == 3);
  CHECK(merged.tokens[0].kind == TokenKind::kTrOpen);
  CHECK(merged.tokens[1].kind == TokenKind::kTdMerged);
  CHECK(merged.tokens[2].kind == TokenKind::kTrClose);
}

TEST_CASE("merge leaves cell-free frames unchanged") {
  const TokenSequence seq = seq_of({{TokenKind::kTableOpen, 0},
                                    {TokenKind::kTrOpen, 0},
                                    {TokenKind::kTrClose, 0},
                                    {TokenKind::kTableClose, 0}});
  const TokenSequence merged = docstruct::merge_td_tokens(seq);
  CHECK(merged.tokens == seq.tokens);
}

TEST_CASE("merge keeps spanning cells in bracket form") {
  const TokenSequence seq = seq_of({{TokenKind::kTrOpen, 0},
                                    {TokenKind::kTdOpenBracket, 0},
                                    {TokenKind::kTdAttrRowspan, 2},
                                    {TokenKind::kTdClose, 0},
                                    {TokenKind::kTdOpen, 0},
                                    {TokenKind::kTdClose, 0},
                                    {TokenKind::kTrClose, 0}});
  const TokenSequence merged = docstruct::merge_td_tokens(seq);
  REQUIRE(merged.tokens.size() == 6);
  CHECK(merged.tokens[1].kind == TokenKind::kTdOpenBracket);
  CHECK(merged.tokens[2].kind == TokenKind::kTdAttrRowspan);
  CHECK(merged.tokens[2].span == 2);
  CHECK(merged.tokens[3].kind == TokenKind::kTdClose);
  CHECK(merged.tokens[4].kind == TokenKind::kTdMerged);
}

TEST_CASE("split expands the merged token") {
  const TokenSequence seq = seq_of({{TokenKind::kTrOpen, 0},
                                    {TokenKind::kTdMerged, 0},
                                    {TokenKind::kTrClose, 0}},
                                   VocabularyForm::kMerged);
  const TokenSequence split = docstruct::split_td_tokens(seq);
  REQUIRE(split.tokens.size() == 4);
  CHECK(split.tokens[1].kind == TokenKind::kTdOpen);
  CHECK(split.tokens[2].kind == TokenKind::kTdClose);
}

TEST_CASE("merge/split round trips and shortening on random grids") {
  testsupport::Rng rng(201);
  for (int trial = 0; trial < 300; ++trial) {
    const docstruct::TableGrid grid = testsupport::random_grid(rng);
    const TokenSequence split =
        docstruct::grid_to_tokens(grid, VocabularyForm::kSplit);
    const TokenSequence merged = docstruct::merge_td_tokens(split);
    CHECK(docstruct::split_td_tokens(merged).tokens == split.tokens);
    const TokenSequence merged_direct =
        docstruct::grid_to_tokens(grid, VocabularyForm::kMerged);
    CHECK(merged.tokens == merged_direct.tokens);
    // Exactly one token shorter per plain cell.
    CHECK(split.size() - merged.size() == count_plain_cells(split));
  }
}

TEST_CASE("malformed nesting is rejected with the offending index") {
  // td outside any row
  try {
    docstruct::validate_sequence(seq_of({{TokenKind::kTdOpen, 0},
                                         {TokenKind::kTdClose, 0}}));
    FAIL("expected ParseError");
  } catch (const docstruct::ParseError& e) {
    REQUIRE(e.position().has_value());
    CHECK(*e.position() == 0);
  }
  // unclosed row
  try {
    docstruct::validate_sequence(seq_of({{TokenKind::kTrOpen, 0}}));
    FAIL("expected ParseError");
  } catch (const docstruct::ParseError& e) {
    REQUIRE(e.position().has_value());
    CHECK(*e.position() == 1);
  }
  // attr outside bracket cell
  CHECK_THROWS_AS(docstruct::validate_sequence(
                      seq_of({{TokenKind::kTrOpen, 0},
                              {TokenKind::kTdAttrRowspan, 2},
                              {TokenKind::kTrClose, 0}})),
                  docstruct::ParseError);
  // merged token in split-form sequence
  CHECK_THROWS_AS(docstruct::validate_sequence(
                      seq_of({{TokenKind::kTrOpen, 0},
                              {TokenKind::kTdMerged, 0},
                              {TokenKind::kTrClose, 0}},
                             VocabularyForm::kSplit)),
                  docstruct::ParseError);
  // content after table close
  CHECK_THROWS_AS(docstruct::validate_sequence(
                      seq_of({{TokenKind::kTableOpen, 0},
                              {TokenKind::kTableClose, 0},
                              {TokenKind::kTrOpen, 0},
                              {TokenKind::kTrClose, 0}})),
                  docstruct::ParseError);
}

TEST_CASE("merge/split form preconditions") {
  const TokenSequence merged = seq_of({{TokenKind::kTrOpen, 0},
                                       {TokenKind::kTdMerged, 0},
                                       {TokenKind::kTrClose, 0}},
                                      VocabularyForm::kMerged);
  CHECK_THROWS_AS(docstruct::merge_td_tokens(merged),
                  docstruct::ValidationError);
  const TokenSequence split = seq_of({{TokenKind::kTrOpen, 0},
                                      {TokenKind::kTdOpen, 0},
                                      {TokenKind::kTdClose, 0},
                                      {TokenKind::kTrClose, 0}});
  CHECK_THROWS_AS(docstruct::split_td_tokens(split),
                  docstruct::ValidationError);
}

TEST_CASE("string round trip follows the dataset vocabulary") {
  const std::vector<std::string> merged_strings{
      "<thead>", "<tr>", "<td></td>", "</tr>", "</thead>",
      "<tbody>", "<tr>",  "<td", " rowspan=\"2\"", ">", "</td>",
      "<td></td>", "</tr>", "<tr>", "<td></td>", "</tr>", "</tbody>"};
  const TokenSequence merged = docstruct::strings_to_tokens(merged_strings);
  CHECK(merged.form == VocabularyForm::kMerged);
  CHECK(docstruct::count_cells(merged) == 4);
  CHECK(docstruct::tokens_to_strings(merged) == merged_strings);

  const std::vector<std::string> split_strings{
      "<tbody>", "<tr>", "<td>", "</td>", "<td", " colspan=\"3\"", ">",
      "</td>", "</tr>", "</tbody>"};
  const TokenSequence split = docstruct::strings_to_tokens(split_strings);
  CHECK(split.form == VocabularyForm::kSplit);
  CHECK(docstruct::count_cells(split) == 2);
  CHECK(docstruct::tokens_to_strings(split) == split_strings);

  // Mixed vocabulary forms in one sequence are rejected.
  CHECK_THROWS_AS(docstruct::strings_to_tokens(
                      {"<tr>", "<td>", "</td>", "<td></td>", "</tr>"}),
                  docstruct::ParseError);
}

TEST_CASE("string parsing edge cases") {
  // span of 1 is dropped as a no-op
  const TokenSequence one = docstruct::strings_to_tokens(
      {"<tr>", "<td", " rowspan=\"1\"", ">", "</td>", "</tr>"});
  REQUIRE(one.tokens.size() == 4);
  CHECK(one.tokens[1].kind == TokenKind::kTdOpenBracket);
  CHECK(one.tokens[2].kind == TokenKind::kTdClose);

  // unquoted and unspaced attr values are tolerated
  const TokenSequence loose = docstruct::strings_to_tokens(
      {"<tr>", "<td", "colspan=3", ">", "</td>", "</tr>"});
  CHECK(loose.tokens[2].kind == TokenKind::kTdAttrColspan);
  CHECK(loose.tokens[2].span == 3);

  CHECK_THROWS_AS(docstruct::strings_to_tokens({"<tr>", "<banana>", "</tr>"}),
                  docstruct::ParseError);
  CHECK_THROWS_AS(docstruct::strings_to_tokens({"<tr>", ">", "</tr>"}),
                  docstruct::ParseError);
  CHECK_THROWS_AS(
      docstruct::strings_to_tokens(
          {"<tr>", "<td", " rowspan=\"0\"", ">", "</td>", "</tr>"}),
      docstruct::ParseError);
  CHECK_THROWS_AS(
      docstruct::strings_to_tokens({"<tr>", " rowspan=\"2\"", "</tr>"}),
      docstruct::ParseError);
}

TEST_CASE("count_cells counts every cell form once") {
  const TokenSequence seq = docstruct::strings_to_tokens(
      {"<tr>", "<td></td>", "<td", " colspan=\"2\"", ">", "</td>", "</tr>"});
  CHECK(docstruct::count_cells(seq) == 2);
  CHECK(docstruct::count_cells(TokenSequence{}) == 0);
}
