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

#include "docstruct/table_metrics.hpp"

#include <mutex>
#include <optional>

#include "docstruct/error.hpp"
#include "docstruct/parallel.hpp"

namespace docstruct {

StructureAccuracyResult structure_accuracy(
    std::span<const TableSample> samples, long max_tokens) {
  if (max_tokens < 0) {
    throw ValidationError("max_tokens must be >= 0");
  }
  StructureAccuracyResult result;
  result.gt_token_len.resize(samples.size(), 0);
  result.skipped.resize(samples.size(), 0);
  result.matched.resize(samples.size(), 0);
  long matches = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TableSample& sample = samples[i];
    TokenSequence gt_norm;
    try {
      gt_norm = normalize_merged(sample.gt_tokens);
    } catch (const Error& e) {
      throw Error("sample '" + sample.sample_id +
                  "': gt tokens invalid: " + e.what());
    }
    const long len = static_cast<long>(gt_norm.size());
    result.gt_token_len[i] = len;
    if (len > max_tokens) {
      result.skipped[i] = 1;
      ++result.n_skipped;
      continue;
    }
    ++result.n_evaluated;
    if (!sample.pred_tokens_valid) continue;
    bool equal = false;
    try {
      equal = normalize_merged(sample.pred_tokens).tokens == gt_norm.tokens;
    } catch (const Error&) {
      equal = false;  // malformed pred counts as a miss, not a failure
    }
    if (equal) {
      result.matched[i] = 1;
      ++matches;
    }
  }
  result.accuracy = result.n_evaluated > 0
                        ? static_cast<double>(matches) / result.n_evaluated
                        : 0.0;
  return result;
}

BatchTedsResult batch_teds(std::span<const TableSample> samples,
                           bool struct_only, int threads) {
  BatchTedsResult result;
  result.per_sample.resize(samples.size());
  struct Failure {
    std::size_t index;
    std::string message;
  };
  std::optional<Failure> first_failure;
  std::mutex failure_mutex;

  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const TableSample& sample = samples[i];
    try {
      result.per_sample[i] = struct_only
                                 ? teds_struct(sample.pred_html, sample.gt_html)
                                 : teds(sample.pred_html, sample.gt_html);
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!first_failure || i < first_failure->index) {
        first_failure = Failure{i, e.what()};
      }
    }
  });
  if (first_failure) {
    throw Error("sample '" + samples[first_failure->index].sample_id +
                "': " + first_failure->message);
  }
  double sum = 0.0;
  for (const TedsResult& r : result.per_sample) sum += r.score;
  result.mean = samples.empty()
                    ? 0.0
                    : sum / static_cast<double>(samples.size());
  return result;
}

}  // namespace docstruct
