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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/geometry.hpp"

namespace docstruct {

/// Semantic entity: a labeled text segment on the page.
struct Entity {
  std::string id;
  std::string label;
  std::string text;
  Box box;
};

/// Directed question -> answer link between two entities.
struct Relation {
  std::string question_id;
  std::string answer_id;
};

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double hmean = 0.0;
};

struct MatchCounts {
  long correct = 0;
  long n_pred = 0;
  long n_gt = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    correct += o.correct;
    n_pred += o.n_pred;
    n_gt += o.n_gt;
    return *this;
  }
};

/// Trims surrounding ASCII whitespace; case is preserved.
std::string normalize_entity_text(std::string_view text);

/// P = correct/|pred|, R = correct/|gt|, Hmean = 2PR/(P+R) (0 when P+R=0);
/// all three are 1 when both sides are empty.
PrfScore prf_from_counts(const MatchCounts& counts);

/// A predicted entity is correct iff an unmatched gt entity has the same
/// label and the same normalized text; matching is greedy one-to-one in
/// input order.
MatchCounts ser_match_counts(std::span<const Entity> pred,
                             std::span<const Entity> gt);
PrfScore ser_hmean(std::span<const Entity> pred, std::span<const Entity> gt);

/// A predicted relation is correct iff its ordered (question label+text,
/// answer label+text) tuple matches an unmatched gt tuple. Throws
/// ValidationError on dangling or duplicate entity ids.
MatchCounts re_match_counts(std::span<const Relation> pred,
                            std::span<const Entity> pred_entities,
                            std::span<const Relation> gt,
                            std::span<const Entity> gt_entities);
PrfScore re_hmean(std::span<const Relation> pred,
                  std::span<const Entity> pred_entities,
                  std::span<const Relation> gt,
                  std::span<const Entity> gt_entities);

}  // namespace docstruct
