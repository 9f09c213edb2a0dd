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
#include <vector>

#include "docstruct/table_token.hpp"
#include "docstruct/teds.hpp"

namespace docstruct {

/// One prediction/ground-truth pair for table recognition evaluation.
/// The gt side must always be valid; a malformed pred scores zero rather
/// than aborting the batch.
struct TableSample {
  std::string sample_id;
  TokenSequence pred_tokens;
  TokenSequence gt_tokens;
  std::string pred_html;
  std::string gt_html;
  bool pred_tokens_valid = true;  // false when pred tokens failed to parse
};

struct StructureAccuracyResult {
  double accuracy = 0.0;  // exact-match count / n_evaluated; 0 when empty
  long n_evaluated = 0;
  long n_skipped = 0;
  std::vector<long> gt_token_len;  // merged-form gt length per sample
  std::vector<char> skipped;       // per sample
  std::vector<char> matched;       // per sample (false when skipped)
};

/// Exact token-sequence accuracy. Samples whose merged-form gt token
/// length exceeds max_tokens are excluded from the denominator. Both
/// sequences are normalized to merged form before comparison, so the
/// result is invariant to the input vocabulary form.
StructureAccuracyResult structure_accuracy(std::span<const TableSample> samples,
                                           long max_tokens = 500);

struct BatchTedsResult {
  double mean = 0.0;  // arithmetic mean over all samples; 0 when empty
  std::vector<TedsResult> per_sample;
};

/// TEDS (or TEDS-Struct) over every sample, with no length filter. Unparseable
/// predictions score 0; an unparseable gt throws an Error naming the
/// sample_id. Per-sample scoring may run on `threads` workers with a
/// deterministic, order-independent mean.
BatchTedsResult batch_teds(std::span<const TableSample> samples,
                           bool struct_only, int threads = 1);

}  // namespace docstruct
