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
#include <cstdint>
#include <string>
#include <vector>

namespace docstruct {

/// Structural-token vocabulary for HTML tables.
///
/// A span-free cell is either the split pair (kTdOpen, kTdClose) or the
/// single merged token kTdMerged. A spanning cell always uses the bracket
/// encoding: kTdOpenBracket, one or two kTdAttr* tokens, kTdClose. In the
/// string serialization the bracket group is closed by a ">" list entry;
/// in memory that terminator is implicit (the attr run simply ends).
enum class TokenKind : std::uint8_t {
  kTableOpen,
  kTableClose,
  kTheadOpen,
  kTheadClose,
  kTbodyOpen,
  kTbodyClose,
  kTrOpen,
  kTrClose,
  kTdOpen,
  kTdClose,
  kTdMerged,
  kTdOpenBracket,
  kTdAttrRowspan,
  kTdAttrColspan,
};

struct StructureToken {
  TokenKind kind = TokenKind::kTdMerged;
  int span = 0;  // >= 2 for kTdAttrRowspan / kTdAttrColspan, 0 otherwise

  bool operator==(const StructureToken&) const = default;
};

enum class VocabularyForm { kSplit, kMerged };

/// Ordered structural-token stream. The table wrapper is optional: fragment
/// sequences starting at thead/tbody/tr level are valid and common in
/// dataset files.
struct TokenSequence {
  std::vector<StructureToken> tokens;
  VocabularyForm form = VocabularyForm::kSplit;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const TokenSequence&) const = default;
};

/// Checks well-nestedness (rows inside table scope, cells inside rows,
/// attrs inside bracket groups, matched closes) and form consistency.
/// Throws ParseError naming the offending token index.
void validate_sequence(const TokenSequence& seq);

/// Number of cells (cell-opening tokens) in the sequence.
std::size_t count_cells(const TokenSequence& seq);

/// Collapses every adjacent span-free (kTdOpen, kTdClose) pair into a
/// single kTdMerged token. Spanning cells in bracket form are untouched.
TokenSequence merge_td_tokens(const TokenSequence& seq);

/// Exact inverse of merge_td_tokens.
TokenSequence split_td_tokens(const TokenSequence& seq);

/// Returns the sequence in merged form, merging when necessary.
TokenSequence normalize_merged(const TokenSequence& seq);

/// Serializes to the PubTabNet-style string list ("<tr>", "<td></td>",
/// "<td", " rowspan=\"2\"", ">", "</td>", ...). Bracket groups gain the
/// ">" terminator entry.
std::vector<std::string> tokens_to_strings(const TokenSequence& seq);

/// Parses a PubTabNet-style string list. The ">" bracket terminator is
/// consumed; span attributes of value 1 are dropped as no-ops. The
/// vocabulary form is inferred (merged iff any "<td></td>" entry occurs).
TokenSequence strings_to_tokens(const std::vector<std::string>& strings);

}  // namespace docstruct
