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

#include <string>
#include <string_view>

#include "docstruct/table_grid.hpp"

namespace docstruct {

/// Decodes &amp; &lt; &gt; &quot; &apos; and numeric references
/// (&#NN; decimal, &#xHH; hex). Unknown or malformed entities pass
/// through literally.
std::string decode_entities(std::string_view text);

/// Escapes &, < and > for use in HTML text content.
std::string escape_text(std::string_view text);

/// Parses the first table element in html into a grid with cell text.
/// Supported tags: table/thead/tbody/tr/td/th with rowspan/colspan; other
/// tags are stripped, entities decoded, th treated as td (header rows are
/// tracked via thead). Throws ParseError when no table element exists and
/// StructureError (with byte offset) on mismatched tags or nested tables.
TableGrid parse_html_table(std::string_view html);

/// Minimal well-formed HTML for a grid; parse_html_table round-trips it to
/// an equal grid. Cell text is entity-escaped.
std::string table_to_html(const TableGrid& grid);

}  // namespace docstruct
