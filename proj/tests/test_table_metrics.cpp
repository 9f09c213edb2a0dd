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
#include "docstruct/html_table.hpp"
#include "docstruct/table_metrics.hpp"
#include "doctest.h"
#include "support/random_gen.hpp"

using docstruct::TableGrid;
using docstruct::TableSample;
using docstruct::TokenSequence;
using docstruct::VocabularyForm;

namespace {

// A grid of plain cells whose merged token count is exactly
// 4 + rows * (cols + 2).
TableGrid plain_grid(int rows, int cols) {
  TableGrid grid;
  grid.n_rows = rows;
  grid.n_cols = cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      docstruct::Cell cell;
      cell.row = r;
      cell.col = c;
      cell.text = "x";
      grid.cells.push_back(std::move(cell));
    }
  }
  return grid;
}

TableSample sample_from_grids(const std::string& id, const TableGrid& pred,
                              const TableGrid& gt, VocabularyForm pred_form,
                              VocabularyForm gt_form) {
  TableSample s;
  s.sample_id = id;
  s.pred_tokens = docstruct::grid_to_tokens(pred, pred_form);
  s.gt_tokens = docstruct::grid_to_tokens(gt, gt_form);
  s.pred_html = docstruct::table_to_html(pred);
  s.gt_html = docstruct::table_to_html(gt);
  return s;
}

}  // namespace

TEST_CASE("structure accuracy counts exact merged-form matches") {
  const TableGrid g = plain_grid(2, 2);
  std::vector<TableSample> samples{
      sample_from_grids("a", g, g, VocabularyForm::kMerged,
                        VocabularyForm::kMerged),
      sample_from_grids("b", g, g, VocabularyForm::kSplit,
                        VocabularyForm::kMerged)};
  const auto result = docstruct::structure_accuracy(samples, 500);
  CHECK(result.accuracy == doctest::Approx(1.0));
  CHECK(result.n_evaluated == 2);
  CHECK(result.n_skipped == 0);
}

TEST_CASE("structure accuracy is invariant to vocabulary form") {
  testsupport::Rng rng(801);
  for (int trial = 0; trial < 50; ++trial) {
    const TableGrid pred = testsupport::random_grid(rng, 4, 4);
    const TableGrid gt = rng.chance(0.5) ? pred
                                         : testsupport::random_grid(rng, 4, 4);
    std::vector<TableSample> split_side{sample_from_grids(
        "s", pred, gt, VocabularyForm::kSplit, VocabularyForm::kSplit)};
    std::vector<TableSample> merged_side{sample_from_grids(
        "m", pred, gt, VocabularyForm::kMerged, VocabularyForm::kMerged)};
    CHECK(docstruct::structure_accuracy(split_side, 500).accuracy ==
          docstruct::structure_accuracy(merged_side, 500).accuracy);
  }
}

TEST_CASE("gt token length over 500 is excluded from accuracy only") {
  // 71 rows x 5 cols of plain cells: 4 + 71*7 = 501 merged tokens.
  const TableGrid big = plain_grid(71, 5);
  const TableGrid small = plain_grid(1, 1);
  std::vector<TableSample> samples{
      sample_from_grids("big", big, big, VocabularyForm::kMerged,
                        VocabularyForm::kMerged),
      sample_from_grids("small", small, small, VocabularyForm::kMerged,
                        VocabularyForm::kMerged)};

  const auto acc = docstruct::structure_accuracy(samples, 500);
  CHECK(acc.gt_token_len[0] == 501);
  CHECK(acc.n_skipped == 1);
  CHECK(acc.n_evaluated == 1);
  CHECK(acc.accuracy == doctest::Approx(1.0));

  // TEDS has no length filter: both samples participate.
  const auto teds_result = docstruct::batch_teds(samples, false, 1);
  CHECK(teds_result.per_sample.size() == 2);
  CHECK(teds_result.mean == doctest::Approx(1.0));
}

TEST_CASE("a one-token difference is a miss") {
  const TableGrid g1 = plain_grid(1, 2);
  const TableGrid g2 = plain_grid(1, 3);
  std::vector<TableSample> samples{sample_from_grids(
      "x", g1, g2, VocabularyForm::kMerged, VocabularyForm::kMerged)};
  const auto result = docstruct::structure_accuracy(samples, 500);
  CHECK(result.accuracy == 0.0);
  CHECK(result.n_evaluated == 1);
}

TEST_CASE("invalid pred tokens count as a miss") {
  const TableGrid g = plain_grid(1, 1);
  TableSample s = sample_from_grids("x", g, g, VocabularyForm::kMerged,
                                    VocabularyForm::kMerged);
  s.pred_tokens.tokens.pop_back();  // break nesting
  const auto result = docstruct::structure_accuracy({&s, 1}, 500);
  CHECK(result.accuracy == 0.0);
}

TEST_CASE("batch teds semantics") {
  const TableGrid g = plain_grid(2, 2);
  SUBCASE("all equal scores 1") {
    std::vector<TableSample> samples{
        sample_from_grids("a", g, g, VocabularyForm::kMerged,
                          VocabularyForm::kMerged)};
    CHECK(docstruct::batch_teds(samples, false, 1).mean ==
          doctest::Approx(1.0));
  }
  SUBCASE("garbage pred scores 0 and averages in") {
    std::vector<TableSample> samples{
        sample_from_grids("good", g, g, VocabularyForm::kMerged,
                          VocabularyForm::kMerged),
        sample_from_grids("bad", g, g, VocabularyForm::kMerged,
                          VocabularyForm::kMerged)};
    samples[1].pred_html = "<div>garbage</div>";
    const auto result = docstruct::batch_teds(samples, false, 1);
    CHECK(result.mean == doctest::Approx(0.5));
    CHECK(result.per_sample[1].pred_parse_failed);
  }
  SUBCASE("gt parse failure names the sample") {
    std::vector<TableSample> samples{
        sample_from_grids("broken", g, g, VocabularyForm::kMerged,
                          VocabularyForm::kMerged)};
    samples[0].gt_html = "<div>nope</div>";
    CHECK_THROWS_WITH_AS(docstruct::batch_teds(samples, false, 1),
                         doctest::Contains("broken"), docstruct::Error);
  }
  SUBCASE("empty batch") {
    CHECK(docstruct::batch_teds({}, false, 1).mean == 0.0);
  }
}

TEST_CASE("struct-only mean is at least the full mean") {
  testsupport::Rng rng(802);
  std::vector<TableSample> samples;
  for (int i = 0; i < 20; ++i) {
    const TableGrid pred = testsupport::random_grid(rng, 4, 4);
    const TableGrid gt = rng.chance(0.3) ? pred
                                         : testsupport::random_grid(rng, 4, 4);
    samples.push_back(sample_from_grids(
        "s" + std::to_string(i), pred, gt, VocabularyForm::kMerged,
        VocabularyForm::kMerged));
  }
  const double full = docstruct::batch_teds(samples, false, 2).mean;
  const double structural = docstruct::batch_teds(samples, true, 2).mean;
  CHECK(structural >= full - 1e-12);
}

TEST_CASE("batch metrics are permutation-invariant in sample order") {
  testsupport::Rng rng(804);
  std::vector<TableSample> samples;
  for (int i = 0; i < 15; ++i) {
    const TableGrid pred = testsupport::random_grid(rng, 4, 4);
    const TableGrid gt = rng.chance(0.5) ? pred
                                         : testsupport::random_grid(rng, 4, 4);
    samples.push_back(sample_from_grids(
        "s" + std::to_string(i), pred, gt, VocabularyForm::kMerged,
        VocabularyForm::kMerged));
  }
  std::vector<TableSample> reversed(samples.rbegin(), samples.rend());

  const auto acc_a = docstruct::structure_accuracy(samples, 500);
  const auto acc_b = docstruct::structure_accuracy(reversed, 500);
  CHECK(acc_a.accuracy == acc_b.accuracy);
  CHECK(acc_a.n_evaluated == acc_b.n_evaluated);
  CHECK(acc_a.n_skipped == acc_b.n_skipped);

  const double mean_a = docstruct::batch_teds(samples, false, 1).mean;
  const double mean_b = docstruct::batch_teds(reversed, false, 1).mean;
  CHECK(mean_a == doctest::Approx(mean_b).epsilon(1e-12));
}

TEST_CASE("batch teds is thread-count independent") {
  testsupport::Rng rng(803);
  std::vector<TableSample> samples;
  for (int i = 0; i < 30; ++i) {
    const TableGrid pred = testsupport::random_grid(rng, 4, 4);
    const TableGrid gt = testsupport::random_grid(rng, 4, 4);
    samples.push_back(sample_from_grids(
        "s" + std::to_string(i), pred, gt, VocabularyForm::kMerged,
        VocabularyForm::kMerged));
  }
  const auto serial = docstruct::batch_teds(samples, false, 1);
  const auto parallel = docstruct::batch_teds(samples, false, 4);
  CHECK(serial.mean == parallel.mean);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(serial.per_sample[i].score == parallel.per_sample[i].score);
  }
}
