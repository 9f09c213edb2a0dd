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

#include "docstruct/kie_metrics.hpp"

#include <cctype>
#include <tuple>
#include <unordered_map>

#include "docstruct/error.hpp"

namespace docstruct {

std::string normalize_entity_text(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end &&
         std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

PrfScore prf_from_counts(const MatchCounts& counts) {
  if (counts.n_pred == 0 && counts.n_gt == 0) return {1.0, 1.0, 1.0};
  PrfScore score;
  score.precision =
      counts.n_pred > 0
          ? static_cast<double>(counts.correct) / counts.n_pred
          : 0.0;
  score.recall = counts.n_gt > 0
                     ? static_cast<double>(counts.correct) / counts.n_gt
                     : 0.0;
  const double pr = score.precision + score.recall;
  score.hmean = pr > 0.0 ? 2.0 * score.precision * score.recall / pr : 0.0;
  return score;
}

MatchCounts ser_match_counts(std::span<const Entity> pred,
                             std::span<const Entity> gt) {
  MatchCounts counts;
  counts.n_pred = static_cast<long>(pred.size());
  counts.n_gt = static_cast<long>(gt.size());
  std::vector<char> gt_used(gt.size(), 0);
  std::vector<std::pair<std::string, std::string>> gt_keys;
  gt_keys.reserve(gt.size());
  for (const Entity& e : gt) {
    gt_keys.emplace_back(e.label, normalize_entity_text(e.text));
  }
  for (const Entity& p : pred) {
    const std::pair<std::string, std::string> key{
        p.label, normalize_entity_text(p.text)};
    for (std::size_t g = 0; g < gt.size(); ++g) {
      if (!gt_used[g] && gt_keys[g] == key) {
        gt_used[g] = 1;
        ++counts.correct;
        break;
      }
    }
  }
  return counts;
}

PrfScore ser_hmean(std::span<const Entity> pred, std::span<const Entity> gt) {
  return prf_from_counts(ser_match_counts(pred, gt));
}

namespace {

using PairKey = std::tuple<std::string, std::string, std::string, std::string>;

std::vector<PairKey> relation_keys(std::span<const Relation> relations,
                                   std::span<const Entity> entities,
                                   const char* side) {
  std::unordered_map<std::string, const Entity*> by_id;
  for (const Entity& e : entities) {
    if (!by_id.emplace(e.id, &e).second) {
      throw ValidationError(std::string(side) + ": duplicate entity id '" +
                            e.id + "'");
    }
  }
  std::vector<PairKey> keys;
  keys.reserve(relations.size());
  for (const Relation& r : relations) {
    auto q = by_id.find(r.question_id);
    auto a = by_id.find(r.answer_id);
    if (q == by_id.end()) {
      throw ValidationError(std::string(side) +
                            ": relation references unknown entity id '" +
                            r.question_id + "'");
    }
    if (a == by_id.end()) {
      throw ValidationError(std::string(side) +
                            ": relation references unknown entity id '" +
                            r.answer_id + "'");
    }
    keys.emplace_back(q->second->label,
                      normalize_entity_text(q->second->text),
                      a->second->label,
                      normalize_entity_text(a->second->text));
  }
  return keys;
}

}  // namespace

MatchCounts re_match_counts(std::span<const Relation> pred,
                            std::span<const Entity> pred_entities,
                            std::span<const Relation> gt,
                            std::span<const Entity> gt_entities) {
  const std::vector<PairKey> pred_keys =
      relation_keys(pred, pred_entities, "pred");
  const std::vector<PairKey> gt_keys = relation_keys(gt, gt_entities, "gt");
  MatchCounts counts;
  counts.n_pred = static_cast<long>(pred_keys.size());
  counts.n_gt = static_cast<long>(gt_keys.size());
  std::vector<char> gt_used(gt_keys.size(), 0);
  for (const PairKey& key : pred_keys) {
    for (std::size_t g = 0; g < gt_keys.size(); ++g) {
      if (!gt_used[g] && gt_keys[g] == key) {
        gt_used[g] = 1;
        ++counts.correct;
        break;
      }
    }
  }
  return counts;
}

PrfScore re_hmean(std::span<const Relation> pred,
                  std::span<const Entity> pred_entities,
                  std::span<const Relation> gt,
                  std::span<const Entity> gt_entities) {
  return prf_from_counts(re_match_counts(pred, pred_entities, gt, gt_entities));
}

}  // namespace docstruct
