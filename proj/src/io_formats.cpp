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

#include "docstruct/io_formats.hpp"

#include <cmath>
#include <filesystem>

#include "docstruct/error.hpp"
#include "docstruct/html_table.hpp"
#include "json.hpp"

namespace docstruct {

namespace {

using Json = nlohmann::json;

std::string line_ctx(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

const Json& require_field(const Json& obj, const char* key,
                          const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(context + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const Json& obj, const char* key,
                           const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (!v.is_string()) {
    throw ValidationError(context + ": field '" + key +
                          "' must be a string");
  }
  return v.get<std::string>();
}

// Accepts numbers too: dataset ids are frequently integers.
std::string require_id(const Json& obj, const char* key,
                       const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ValidationError(context + ": field '" + key +
                        "' must be a string or integer id");
}

Box parse_box(const Json& v, const std::string& context) {
  if (!v.is_array() || v.size() != 4) {
    throw ValidationError(context + ": bbox must be an array of 4 numbers");
  }
  double coords[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number()) {
      throw ValidationError(context + ": bbox must contain only numbers");
    }
    coords[i] = v[i].get<double>();
  }
  const Box box{coords[0], coords[1], coords[2], coords[3]};
  if (!is_valid(box)) {
    throw ValidationError(context +
                          ": bbox violates box invariants (finite, x0 <= x1, "
                          "y0 <= y1)");
  }
  return box;
}

TableAnnotationRecord parse_table_line(const std::string& text,
                                       const std::string& path,
                                       std::size_t line_number) {
  const std::string context = line_ctx(path, line_number);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(context + ": malformed JSON: " + e.what());
  }
  TableAnnotationRecord rec;
  rec.line_number = line_number;
  rec.filename = require_string(j, "filename", context);
  if (j.contains("split")) {
    if (!j["split"].is_string()) {
      throw ValidationError(context + ": field 'split' must be a string");
    }
    rec.split = j["split"].get<std::string>();
  }
  const Json& html = require_field(j, "html", context);
  const Json& structure = require_field(html, "structure", context);
  const Json& tokens = require_field(structure, "tokens", context);
  if (!tokens.is_array()) {
    throw ValidationError(context + ": structure tokens must be an array");
  }
  for (const Json& t : tokens) {
    if (!t.is_string()) {
      throw ValidationError(context + ": structure tokens must be strings");
    }
    rec.structure_tokens.push_back(t.get<std::string>());
  }
  const Json& cells = require_field(html, "cells", context);
  if (!cells.is_array()) {
    throw ValidationError(context + ": cells must be an array");
  }
  for (const Json& c : cells) {
    TableCellRecord cell;
    const Json& ctoks = require_field(c, "tokens", context);
    if (!ctoks.is_array()) {
      throw ValidationError(context + ": cell tokens must be an array");
    }
    for (const Json& t : ctoks) {
      if (!t.is_string()) {
        throw ValidationError(context + ": cell tokens must be strings");
      }
      cell.tokens.push_back(t.get<std::string>());
    }
    if (c.contains("bbox") && !c["bbox"].is_null()) {
      cell.bbox = parse_box(c["bbox"], context);
    }
    rec.cells.push_back(std::move(cell));
  }
  return rec;
}

}  // namespace

JsonlTableReader::JsonlTableReader(std::string path, bool lenient)
    : path_(std::move(path)),
      lenient_(lenient),
      in_(std::make_unique<std::ifstream>(path_, std::ios::binary)) {
  if (!*in_) throw IoError("cannot open '" + path_ + "'");
}

JsonlTableReader::~JsonlTableReader() = default;
JsonlTableReader::JsonlTableReader(JsonlTableReader&&) noexcept = default;
JsonlTableReader& JsonlTableReader::operator=(JsonlTableReader&&) noexcept =
    default;

std::optional<TableAnnotationRecord> JsonlTableReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    // Tolerate CRLF and blank lines.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    try {
      return parse_table_line(line, path_, line_);
    } catch (const Error& e) {
      if (!lenient_) throw;
      diagnostics_.push_back({path_, line_, e.what()});
    }
  }
  return std::nullopt;
}

std::vector<TableAnnotationRecord> read_table_jsonl(
    const std::string& path, bool lenient,
    std::vector<Diagnostic>* diagnostics) {
  JsonlTableReader reader(path, lenient);
  std::vector<TableAnnotationRecord> records;
  while (auto rec = reader.next()) records.push_back(std::move(*rec));
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), reader.diagnostics().begin(),
                        reader.diagnostics().end());
  }
  return records;
}

namespace {

bool is_markup_token(const std::string& t) {
  return t.size() >= 3 && t.front() == '<' && t.back() == '>';
}

std::string cell_content(const TableCellRecord& cell) {
  std::string out;
  for (const std::string& t : cell.tokens) {
    if (is_markup_token(t)) continue;  // inline tags stripped
    out += t;
  }
  return out;
}

}  // namespace

TableFromRecord record_to_table(const TableAnnotationRecord& record) {
  TableFromRecord out;
  try {
    out.tokens = strings_to_tokens(record.structure_tokens);
  } catch (const Error& e) {
    throw ParseError("record '" + record.filename + "': " + e.what());
  }
  const std::size_t n_cells = count_cells(out.tokens);
  if (n_cells != record.cells.size()) {
    throw AlignmentError("record '" + record.filename + "'", n_cells,
                         record.cells.size());
  }
  std::vector<std::optional<Box>> bboxes;
  bboxes.reserve(record.cells.size());
  for (const TableCellRecord& c : record.cells) bboxes.push_back(c.bbox);
  out.grid = align_cells(out.tokens, bboxes);
  for (std::size_t i = 0; i < record.cells.size(); ++i) {
    out.grid.cells[i].text = decode_entities(cell_content(record.cells[i]));
  }

  // HTML for TEDS: structure token strings with each cell's raw content
  // spliced in before its closing tag.
  std::string html = "<table>";
  std::size_t cell_idx = 0;
  bool table_wrapped = false;
  for (const StructureToken& t : out.tokens.tokens) {
    if (t.kind == TokenKind::kTableOpen) table_wrapped = true;
  }
  const std::vector<std::string> strings = tokens_to_strings(out.tokens);
  if (table_wrapped) html.clear();
  for (const std::string& s : strings) {
    if (s == "<td></td>") {
      html += "<td>";
      if (cell_idx < record.cells.size()) {
        html += cell_content(record.cells[cell_idx]);
      }
      html += "</td>";
      ++cell_idx;
    } else if (s == "</td>") {
      if (cell_idx < record.cells.size()) {
        html += cell_content(record.cells[cell_idx]);
      }
      html += s;
      ++cell_idx;
    } else {
      html += s;
    }
  }
  if (!table_wrapped) html += "</table>";
  out.html = html;
  return out;
}

namespace {

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "': malformed JSON: " + e.what());
  }
}

std::string entry_ctx(const std::string& path, std::size_t index) {
  return path + " entry " + std::to_string(index);
}

}  // namespace

std::vector<Detection> read_detections(const std::string& path) {
  const Json j = load_json_file(path);
  if (!j.is_array()) {
    throw ValidationError("'" + path + "': expected a JSON array");
  }
  std::vector<Detection> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string context = entry_ctx(path, i);
    const Json& e = j[i];
    Detection d;
    d.image_id = require_id(e, "image_id", context);
    d.category = require_string(e, "category", context);
    d.bbox = parse_box(require_field(e, "bbox", context), context);
    const Json& score = require_field(e, "score", context);
    if (!score.is_number()) {
      throw ValidationError(context + ": score must be a number");
    }
    d.score = score.get<double>();
    if (!(d.score >= 0.0 && d.score <= 1.0)) {
      throw ValidationError(context + ": score must be in [0, 1]");
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<GtBox> read_gt_boxes(const std::string& path) {
  const Json j = load_json_file(path);
  if (!j.is_array()) {
    throw ValidationError("'" + path + "': expected a JSON array");
  }
  std::vector<GtBox> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string context = entry_ctx(path, i);
    const Json& e = j[i];
    if (e.contains("score")) {
      throw ValidationError(context +
                            ": ground-truth boxes must not carry a score");
    }
    GtBox g;
    g.image_id = require_id(e, "image_id", context);
    g.category = require_string(e, "category", context);
    g.bbox = parse_box(require_field(e, "bbox", context), context);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<KieAnnotationRecord> read_kie(const std::string& path) {
  const Json j = load_json_file(path);
  if (!j.is_array()) {
    throw ValidationError("'" + path + "': expected a JSON array");
  }
  std::vector<KieAnnotationRecord> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string context = entry_ctx(path, i);
    const Json& e = j[i];
    KieAnnotationRecord rec;
    rec.image_id = require_id(e, "image_id", context);
    const Json& entities = require_field(e, "entities", context);
    if (!entities.is_array()) {
      throw ValidationError(context + ": entities must be an array");
    }
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < entities.size(); ++k) {
      const Json& ej = entities[k];
      Entity entity;
      entity.id = require_id(ej, "id", context);
      entity.label = require_string(ej, "label", context);
      entity.text = require_string(ej, "text", context);
      entity.box = parse_box(require_field(ej, "bbox", context), context);
      for (const std::string& seen : ids) {
        if (seen == entity.id) {
          throw ValidationError(context + ": duplicate entity id '" +
                                entity.id + "'");
        }
      }
      ids.push_back(entity.id);
      rec.entities.push_back(std::move(entity));
    }
    if (e.contains("relations")) {
      const Json& relations = e["relations"];
      if (!relations.is_array()) {
        throw ValidationError(context + ": relations must be an array");
      }
      for (const Json& rj : relations) {
        if (!rj.is_array() || rj.size() != 2) {
          throw ValidationError(context +
                                ": each relation must be a [question_id, "
                                "answer_id] pair");
        }
        Relation rel;
        auto id_of = [&](const Json& v) -> std::string {
          if (v.is_string()) return v.get<std::string>();
          if (v.is_number_integer()) return std::to_string(v.get<long long>());
          throw ValidationError(context + ": relation ids must be strings or "
                                          "integers");
        };
        rel.question_id = id_of(rj[0]);
        rel.answer_id = id_of(rj[1]);
        bool q_found = false;
        bool a_found = false;
        for (const Entity& ent : rec.entities) {
          if (ent.id == rel.question_id) q_found = true;
          if (ent.id == rel.answer_id) a_found = true;
        }
        if (!q_found || !a_found) {
          throw ValidationError(context +
                                ": relation references unknown entity id '" +
                                (q_found ? rel.answer_id : rel.question_id) +
                                "'");
        }
        rec.relations.push_back(std::move(rel));
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

PageBundle parse_page(const Json& j, const std::string& context) {
  PageBundle page;
  const Json& size = require_field(j, "page", context);
  const Json& width = require_field(size, "width", context);
  const Json& height = require_field(size, "height", context);
  if (!width.is_number() || !height.is_number()) {
    throw ValidationError(context + ": page width/height must be numbers");
  }
  page.page_width = width.get<double>();
  page.page_height = height.get<double>();
  const Json& regions = require_field(j, "regions", context);
  if (!regions.is_array()) {
    throw ValidationError(context + ": regions must be an array");
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Json& rj = regions[i];
    LayoutRegion region;
    const std::string category = require_string(rj, "category", context);
    const auto cat = region_category_from_string(category);
    if (!cat) {
      throw ValidationError(context + ": unknown region category '" +
                            category + "'");
    }
    region.category = *cat;
    region.bbox = parse_box(require_field(rj, "bbox", context), context);
    if (rj.contains("score")) {
      if (!rj["score"].is_number()) {
        throw ValidationError(context + ": region score must be a number");
      }
      region.score = rj["score"].get<double>();
    }
    page.regions.push_back(std::move(region));
  }
  if (j.contains("text_lines")) {
    const Json& lines = j["text_lines"];
    if (!lines.is_array()) {
      throw ValidationError(context + ": text_lines must be an array");
    }
    for (const Json& lj : lines) {
      TextLine line;
      line.bbox = parse_box(require_field(lj, "bbox", context), context);
      line.text = require_string(lj, "text", context);
      page.text_lines.push_back(std::move(line));
    }
  }
  if (j.contains("tables")) {
    const Json& tables = j["tables"];
    if (!tables.is_object()) {
      throw ValidationError(context +
                            ": tables must map region indices to tables");
    }
    for (const auto& [key, value] : tables.items()) {
      std::size_t index = 0;
      try {
        index = static_cast<std::size_t>(std::stoul(key));
      } catch (const std::exception&) {
        throw ValidationError(context + ": table key '" + key +
                              "' is not a region index");
      }
      const std::string html = require_string(value, "html", context);
      TableGrid grid;
      try {
        grid = parse_html_table(html);
      } catch (const Error& e) {
        throw ValidationError(context + ": table " + key + ": " + e.what());
      }
      page.tables.emplace(index, std::move(grid));
    }
  }
  validate_bundle(page);
  return page;
}

}  // namespace

std::vector<NamedPage> read_page_bundles(const std::string& path) {
  const Json j = load_json_file(path);
  const std::string stem = std::filesystem::path(path).stem().string();
  std::vector<NamedPage> out;
  if (j.is_object()) {
    NamedPage page;
    page.name = j.contains("name") && j["name"].is_string()
                    ? j["name"].get<std::string>()
                    : stem;
    page.page = parse_page(j, path);
    out.push_back(std::move(page));
    return out;
  }
  if (!j.is_array()) {
    throw ValidationError("'" + path +
                          "': expected a page object or an array of pages");
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    NamedPage page;
    if (j[i].is_object() && j[i].contains("name") && j[i]["name"].is_string()) {
      page.name = j[i]["name"].get<std::string>();
    } else {
      page.name = i == 0 ? stem : stem + "_p" + std::to_string(i + 1);
    }
    page.page = parse_page(j[i], entry_ctx(path, i));
    out.push_back(std::move(page));
  }
  return out;
}

}  // namespace docstruct
