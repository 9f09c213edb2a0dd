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
#include "doctest.h"
#include "support/random_gen.hpp"

using docstruct::TableGrid;

TEST_CASE("minimal table parses") {
  const TableGrid grid =
      docstruct::parse_html_table("<table><tr><td>a</td></tr></table>");
  CHECK(grid.n_rows == 1);
  CHECK(grid.n_cols == 1);
  REQUIRE(grid.cells.size() == 1);
  CHECK(grid.cells[0].text == "a");
}

TEST_CASE("colspan resolves against the occupancy grid") {
  const TableGrid grid = docstruct::parse_html_table(
      "<table><tr><td colspan=\"2\">x</td></tr>"
      "<tr><td>y</td><td>z</td></tr></table>");
  CHECK(grid.n_rows == 2);
  CHECK(grid.n_cols == 2);
  REQUIRE(grid.cells.size() == 3);
  CHECK(grid.cells[0].colspan == 2);
  CHECK(grid.cells[1].row == 1);
  CHECK(grid.cells[1].col == 0);
  CHECK(grid.cells[2].col == 1);
}

TEST_CASE("entities decode in cell text") {
  const TableGrid grid =
      docstruct::parse_html_table("<table><tr><td>&lt;3</td></tr></table>");
  CHECK(grid.cells[0].text == "<3");
  CHECK(docstruct::decode_entities("&amp;&lt;&gt;&quot;&apos;") ==
        "&<>\"'");
  CHECK(docstruct::decode_entities("&#65;&#x42;") == "AB");
  CHECK(docstruct::decode_entities("&unknown; & &#;") == "&unknown; & &#;");
}

TEST_CASE("inline markup is stripped, th counts via thead") {
  const TableGrid grid = docstruct::parse_html_table(
      "<html><body><table><thead><tr><th><b>H</b>ead</th></tr></thead>"
      "<tbody><tr><td>x<i>y</i></td></tr></tbody></table></body></html>");
  CHECK(grid.header_rows == 1);
  CHECK(grid.n_rows == 2);
  CHECK(grid.cells[0].text == "Head");
  CHECK(grid.cells[1].text == "xy");
}

TEST_CASE("missing table is a parse error") {
  CHECK_THROWS_AS(docstruct::parse_html_table("<div>no table</div>"),
                  docstruct::ParseError);
  CHECK_THROWS_AS(docstruct::parse_html_table(""), docstruct::ParseError);
}

TEST_CASE("mismatched tags carry a byte offset") {
  const std::string html = "<table><tr><td>a</td></tr></tbody></table>";
  try {
    docstruct::parse_html_table(html);
    FAIL("expected StructureError");
  } catch (const docstruct::StructureError& e) {
    REQUIRE(e.offset().has_value());
    CHECK(*e.offset() == html.find("</tbody>"));
  }
  CHECK_THROWS_AS(docstruct::parse_html_table("<table><tr><td>a"),
                  docstruct::StructureError);
  CHECK_THROWS_AS(
      docstruct::parse_html_table("<table><tr></td></tr></table>"),
      docstruct::StructureError);
}

TEST_CASE("nested tables are rejected") {
  CHECK_THROWS_AS(docstruct::parse_html_table(
                      "<table><tr><td><table></table></td></tr></table>"),
                  docstruct::StructureError);
}

TEST_CASE("tag-soup shorthands parse deterministically") {
  // Unclosed td/tr are implicitly closed by the next opener.
  const TableGrid grid = docstruct::parse_html_table(
      "<table><tr><td>a<td>b<tr><td>c</table>");
  CHECK(grid.n_rows == 2);
  CHECK(grid.n_cols == 2);
  REQUIRE(grid.cells.size() == 3);
  CHECK(grid.cells[0].text == "a");
  CHECK(grid.cells[1].text == "b");
  CHECK(grid.cells[2].text == "c");
}

TEST_CASE("span attribute validation") {
  CHECK_THROWS_AS(docstruct::parse_html_table(
                      "<table><tr><td rowspan=\"0\">x</td></tr></table>"),
                  docstruct::ParseError);
  CHECK_THROWS_AS(docstruct::parse_html_table(
                      "<table><tr><td rowspan=\"abc\">x</td></tr></table>"),
                  docstruct::ParseError);
  // rowspan=1 is a no-op, not an error
  const TableGrid grid = docstruct::parse_html_table(
      "<table><tr><td rowspan='1'>x</td></tr></table>");
  CHECK(grid.cells[0].rowspan == 1);
}

TEST_CASE("serializer escapes text") {
  TableGrid grid;
  grid.n_rows = 1;
  grid.n_cols = 1;
  docstruct::Cell cell;
  cell.text = "a<b";
  grid.cells.push_back(cell);
  const std::string html = docstruct::table_to_html(grid);
  CHECK(html == "<table><tbody><tr><td>a&lt;b</td></tr></tbody></table>");
  CHECK(docstruct::escape_text("&<>") == "&amp;&lt;&gt;");
}

TEST_CASE("canonical serialization of the minimal table") {
  TableGrid grid;
  grid.n_rows = 1;
  grid.n_cols = 1;
  docstruct::Cell cell;
  cell.text = "a";
  grid.cells.push_back(cell);
  CHECK(docstruct::table_to_html(grid) ==
        "<table><tbody><tr><td>a</td></tr></tbody></table>");
}

TEST_CASE("html round trip on random grids") {
  testsupport::Rng rng(401);
  for (int trial = 0; trial < 300; ++trial) {
    const TableGrid grid = testsupport::random_grid(rng);
    const std::string html = docstruct::table_to_html(grid);
    const TableGrid back = docstruct::parse_html_table(html);
    CHECK(back == grid);
    // Header framing normalization is idempotent.
    CHECK(docstruct::parse_html_table(docstruct::table_to_html(back)) == back);
  }
}

TEST_CASE("content before and after the table is ignored") {
  const TableGrid grid = docstruct::parse_html_table(
      "prefix <p>junk</p> <table><tr><td>a</td></tr></table> trailing");
  REQUIRE(grid.cells.size() == 1);
  CHECK(grid.cells[0].text == "a");
}

TEST_CASE("comments and declarations are skipped") {
  const TableGrid grid = docstruct::parse_html_table(
      "<!DOCTYPE html><table><!-- c --><tr><td>a<!-- x -->b</td></tr>"
      "</table>");
  CHECK(grid.cells[0].text == "ab");
}

TEST_CASE("stray angle bracket inside a cell is literal text") {
  const TableGrid grid =
      docstruct::parse_html_table("<table><tr><td>a < b</td></tr></table>");
  CHECK(grid.cells[0].text == "a < b");
}
