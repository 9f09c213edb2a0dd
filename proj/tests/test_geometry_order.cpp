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

#include <algorithm>
#include <limits>

#include "docstruct/error.hpp"
#include "docstruct/geometry.hpp"
#include "docstruct/reading_order.hpp"
#include "doctest.h"
#include "support/oracles.hpp"
#include "support/random_gen.hpp"

using docstruct::Box;
using docstruct::OrderConfig;
using docstruct::ThresholdMode;

namespace {

bool is_permutation_of_n(const std::vector<std::size_t>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t i : p) {
    if (i >= n || seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("iou basic cases") {
  const Box a{0, 0, 10, 10};
  CHECK(docstruct::iou(a, a) == doctest::Approx(1.0));
  CHECK(docstruct::iou(a, Box{20, 20, 30, 30}) == 0.0);
  CHECK(docstruct::iou(a, Box{5, 0, 15, 10}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("iou matches rasterized pixel-count oracle on integer boxes") {
  testsupport::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Box a = testsupport::random_box(rng, 40, 20);
    const Box b = testsupport::random_box(rng, 40, 20);
    CHECK(docstruct::iou(a, b) ==
          doctest::Approx(testsupport::pixel_iou_oracle(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("iou degenerate and invalid inputs") {
  const Box point{5, 5, 5, 5};
  CHECK(docstruct::iou(point, point) == 0.0);  // union area 0
  CHECK(docstruct::is_valid(Box{0, 0, -1, 0}) == false);
  CHECK_THROWS_AS(docstruct::iou(Box{0, 0, -1, 0}, point),
                  docstruct::ValidationError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(docstruct::iou(Box{0, 0, inf, 1}, point),
                  docstruct::ValidationError);
}

TEST_CASE("iou symmetry property") {
  testsupport::Rng rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const Box a = testsupport::random_box(rng);
    const Box b = testsupport::random_box(rng);
    const double ab = docstruct::iou(a, b);
    CHECK(ab == docstruct::iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("sort_yx examples") {
  CHECK(docstruct::sort_yx({}).empty());

  const std::vector<Box> staggered{{100, 0, 150, 20}, {0, 4, 50, 24}};
  CHECK(docstruct::sort_yx(staggered) == std::vector<std::size_t>{0, 1});

  const std::vector<Box> tie_y{{30, 0, 40, 10}, {10, 0, 20, 10},
                               {20, 0, 30, 10}};
  CHECK(docstruct::sort_yx(tie_y) == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("sort_yx full tie falls back to input order") {
  const std::vector<Box> same{{5, 5, 10, 10}, {5, 5, 10, 10}, {5, 5, 10, 10}};
  CHECK(docstruct::sort_yx(same) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("default_threshold medians") {
  const std::vector<Box> odd{{0, 0, 1, 10}, {0, 0, 1, 20}, {0, 0, 1, 30}};
  CHECK(docstruct::default_threshold(odd, 0.5) == doctest::Approx(10.0));
  const std::vector<Box> even{{0, 0, 1, 10}, {0, 0, 1, 20}};
  CHECK(docstruct::default_threshold(even, 0.5) == doctest::Approx(7.5));
  CHECK(docstruct::default_threshold({}, 0.5) == 0.0);
  CHECK_THROWS_AS(docstruct::default_threshold(odd, 0.0),
                  docstruct::ValidationError);
  CHECK_THROWS_AS(docstruct::default_threshold(odd, -1.0),
                  docstruct::ValidationError);
}

TEST_CASE("group_lines rule application") {
  const std::vector<Box> boxes{{100, 0, 150, 20}, {0, 4, 50, 24}};

  SUBCASE("th=0 gives one line per box") {
    const auto lines = docstruct::group_lines(boxes, 0.0);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == std::vector<std::size_t>{0});
    CHECK(lines[1] == std::vector<std::size_t>{1});
  }
  SUBCASE("centers 10 and 14 group under th=10") {
    const auto lines = docstruct::group_lines(boxes, 10.0);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("centers 10 and 14 split under th=3") {
    const auto lines = docstruct::group_lines(boxes, 3.0);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == std::vector<std::size_t>{0});
    CHECK(lines[1] == std::vector<std::size_t>{1});
  }
}

TEST_CASE("group_lines partitions the index set") {
  testsupport::Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Box> boxes;
    const int n = rng.uniform(0, 25);
    for (int i = 0; i < n; ++i) boxes.push_back(testsupport::random_box(rng));
    const double th = rng.real(0.0, 30.0);
    const auto lines = docstruct::group_lines(boxes, th);
    std::vector<char> seen(boxes.size(), 0);
    for (const auto& line : lines) {
      CHECK(!line.empty());
      for (std::size_t i : line) {
        REQUIRE(i < boxes.size());
        CHECK(!seen[i]);
        seen[i] = 1;
      }
    }
    CHECK(std::count(seen.begin(), seen.end(), 1) ==
          static_cast<long>(boxes.size()));
  }
}

TEST_CASE("sort_tb_yx reverses the staggered pair that sort_yx keeps") {
  const std::vector<Box> boxes{{100, 0, 150, 20}, {0, 4, 50, 24}};
  OrderConfig fixed10;
  fixed10.mode = ThresholdMode::kFixed;
  fixed10.fixed_threshold = 10.0;
  CHECK(docstruct::sort_tb_yx(boxes, fixed10) ==
        std::vector<std::size_t>{1, 0});
  CHECK(docstruct::sort_yx(boxes) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("sort_tb_yx with th=0 equals sort_yx") {
  OrderConfig zero;
  zero.mode = ThresholdMode::kFixed;
  zero.fixed_threshold = 0.0;
  testsupport::Rng rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Box> boxes;
    const int n = rng.uniform(0, 30);
    for (int i = 0; i < n; ++i) boxes.push_back(testsupport::random_box(rng));
    CHECK(docstruct::sort_tb_yx(boxes, zero) == docstruct::sort_yx(boxes));
  }
}

TEST_CASE("sort_tb_yx singleton and permutation property") {
  OrderConfig config;  // auto
  CHECK(docstruct::sort_tb_yx(std::vector<Box>{{3, 4, 9, 10}}, config) ==
        std::vector<std::size_t>{0});
  testsupport::Rng rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Box> boxes;
    const int n = rng.uniform(0, 30);
    for (int i = 0; i < n; ++i) boxes.push_back(testsupport::random_box(rng));
    CHECK(is_permutation_of_n(docstruct::sort_tb_yx(boxes, config), n));
    CHECK(is_permutation_of_n(docstruct::sort_yx(boxes), n));
  }
}

TEST_CASE("sort_tb_yx invariant under translation and matched scaling") {
  testsupport::Rng rng(106);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Box> boxes;
    const int n = rng.uniform(1, 20);
    for (int i = 0; i < n; ++i) boxes.push_back(testsupport::random_box(rng));
    OrderConfig fixed;
    fixed.mode = ThresholdMode::kFixed;
    fixed.fixed_threshold = rng.uniform(0, 20);
    const auto base = docstruct::sort_tb_yx(boxes, fixed);

    const double dx = rng.uniform(-50, 50);
    const double dy = rng.uniform(-50, 50);
    std::vector<Box> shifted;
    for (const Box& b : boxes) {
      shifted.push_back({b.x0 + dx, b.y0 + dy, b.x1 + dx, b.y1 + dy});
    }
    CHECK(docstruct::sort_tb_yx(shifted, fixed) == base);

    std::vector<Box> scaled;
    for (const Box& b : boxes) {
      scaled.push_back({b.x0 * 4, b.y0 * 4, b.x1 * 4, b.y1 * 4});
    }
    OrderConfig scaled_config = fixed;
    scaled_config.fixed_threshold = fixed.fixed_threshold * 4;
    CHECK(docstruct::sort_tb_yx(scaled, scaled_config) == base);
  }
}

TEST_CASE("auto threshold mode uses the median height") {
  // Heights 20 and 20: median 20, factor 0.5 -> th 10, same as fixed 10.
  const std::vector<Box> boxes{{100, 0, 150, 20}, {0, 4, 50, 24}};
  OrderConfig auto_config;  // default 0.5 factor
  CHECK(docstruct::sort_tb_yx(boxes, auto_config) ==
        std::vector<std::size_t>{1, 0});
  CHECK(docstruct::resolve_threshold(boxes, auto_config) ==
        doctest::Approx(10.0));
}

TEST_CASE("order config validation") {
  OrderConfig bad;
  bad.mode = ThresholdMode::kFixed;
  bad.fixed_threshold = -1.0;
  CHECK_THROWS_AS(docstruct::sort_tb_yx(std::vector<Box>{}, bad),
                  docstruct::ValidationError);
  OrderConfig bad_factor;
  bad_factor.auto_factor = 0.0;
  CHECK_THROWS_AS(docstruct::sort_tb_yx(std::vector<Box>{}, bad_factor),
                  docstruct::ValidationError);
}
