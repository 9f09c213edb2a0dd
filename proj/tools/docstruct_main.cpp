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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "docstruct/error.hpp"
#include "docstruct/html_table.hpp"
#include "docstruct/io_formats.hpp"
#include "docstruct/pipeline.hpp"
#include "docstruct/recovery.hpp"
#include "docstruct/report.hpp"
#include "json.hpp"

namespace {

using docstruct::Box;
using docstruct::EvalReport;
using docstruct::OrderConfig;
using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

void emit_report(const EvalReport& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << docstruct::report_to_json(report) << "\n";
    return;
  }
  const bool text = out_path.size() > 4 &&
                    out_path.compare(out_path.size() - 4, 4, ".txt") == 0;
  docstruct::write_report(report, out_path,
                          text ? docstruct::ReportFormat::kText
                               : docstruct::ReportFormat::kJson);
}

void print_diagnostics(const std::vector<docstruct::Diagnostic>& diags) {
  for (const docstruct::Diagnostic& d : diags) {
    std::cerr << d.file;
    if (d.line > 0) std::cerr << ":" << d.line;
    std::cerr << ": " << d.message << "\n";
  }
}

std::vector<Box> read_boxes_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw docstruct::IoError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  bool blank = true;
  for (char c : content) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) return {};
  Json j;
  try {
    j = Json::parse(content);
  } catch (const Json::exception& e) {
    throw docstruct::ParseError("'" + path + "': malformed JSON: " + e.what());
  }
  if (!j.is_array()) {
    throw docstruct::ValidationError("'" + path +
                                     "': expected an array of boxes");
  }
  std::vector<Box> boxes;
  boxes.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    const Json* arr = &e;
    if (e.is_object() && e.contains("bbox")) arr = &e["bbox"];
    if (!arr->is_array() || arr->size() != 4 || !(*arr)[0].is_number() ||
        !(*arr)[1].is_number() || !(*arr)[2].is_number() ||
        !(*arr)[3].is_number()) {
      throw docstruct::ValidationError(
          "'" + path + "' entry " + std::to_string(i) +
          ": expected [x0, y0, x1, y1]");
    }
    Box box{(*arr)[0].get<double>(), (*arr)[1].get<double>(),
            (*arr)[2].get<double>(), (*arr)[3].get<double>()};
    if (!docstruct::is_valid(box)) {
      throw docstruct::ValidationError("'" + path + "' entry " +
                                       std::to_string(i) + ": invalid box");
    }
    boxes.push_back(box);
  }
  return boxes;
}

OrderConfig order_config_from_th(const std::string& th) {
  OrderConfig config;
  if (th == "auto") {
    config.mode = docstruct::ThresholdMode::kAuto;
    return config;
  }
  config.mode = docstruct::ThresholdMode::kFixed;
  try {
    std::size_t consumed = 0;
    config.fixed_threshold = std::stod(th, &consumed);
    if (consumed != th.size()) throw std::invalid_argument(th);
  } catch (const std::exception&) {
    throw docstruct::ValidationError("--th must be 'auto' or a pixel value");
  }
  if (config.fixed_threshold < 0.0) {
    throw docstruct::ValidationError("--th must be >= 0");
  }
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw docstruct::IoError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"docstruct: document structure analysis toolkit"};
  app.require_subcommand(1);

  // eval-layout
  auto* eval_layout = app.add_subcommand(
      "eval-layout", "Detection mAP over layout pred/gt box files");
  std::string layout_pred, layout_gt, layout_iou = "coco", layout_out;
  eval_layout->add_option("--pred", layout_pred, "Predictions JSON file")
      ->required();
  eval_layout->add_option("--gt", layout_gt, "Ground-truth JSON file")
      ->required();
  eval_layout->add_option("--iou", layout_iou, "Protocol: coco or single")
      ->check(CLI::IsMember({"coco", "single"}));
  eval_layout->add_option("--out", layout_out, "Report file (JSON; .txt for text)");

  // eval-table
  auto* eval_table = app.add_subcommand(
      "eval-table", "Structure accuracy and TEDS over table JSONL files");
  std::string table_pred, table_gt, table_out;
  long max_tokens = 500;
  bool struct_only = false;
  bool table_lenient = false;
  int table_threads = 0;
  eval_table->add_option("--pred", table_pred, "Prediction JSONL file")
      ->required();
  eval_table->add_option("--gt", table_gt, "Ground-truth JSONL file")
      ->required();
  eval_table->add_option("--max-tokens", max_tokens,
                         "Structure-accuracy token limit");
  eval_table->add_flag("--struct-only", struct_only,
                       "Compute TEDS-Struct only");
  eval_table->add_flag("--lenient", table_lenient,
                       "Skip corrupt lines instead of aborting");
  eval_table->add_option("--threads", table_threads, "Worker count (0 = auto)")
      ->envname("DOCSTRUCT_THREADS");
  eval_table->add_option("--out", table_out, "Report file");

  // eval-kie
  auto* eval_kie = app.add_subcommand(
      "eval-kie", "SER/RE Hmean over KIE annotation files");
  std::string kie_pred, kie_gt, kie_task, kie_out;
  eval_kie->add_option("--pred", kie_pred, "Prediction JSON file")->required();
  eval_kie->add_option("--gt", kie_gt, "Ground-truth JSON file")->required();
  eval_kie->add_option("--task", kie_task, "ser or re")
      ->required()
      ->check(CLI::IsMember({"ser", "re"}));
  eval_kie->add_option("--out", kie_out, "Report file");

  // sort
  auto* sort_cmd = app.add_subcommand(
      "sort", "Reading-order permutation for a box file");
  std::string sort_boxes, sort_algo = "tbyx", sort_th = "auto";
  sort_cmd->add_option("--boxes", sort_boxes, "JSON array of [x0,y0,x1,y1]")
      ->required();
  sort_cmd->add_option("--algo", sort_algo, "yx or tbyx")
      ->check(CLI::IsMember({"yx", "tbyx"}));
  sort_cmd->add_option("--th", sort_th, "'auto' or pixel threshold");

  // recover
  auto* recover = app.add_subcommand(
      "recover", "Rebuild editable HTML/Markdown from a page bundle");
  std::string bundle_path, out_dir, recover_format = "both";
  recover->add_option("--bundle", bundle_path, "Page bundle JSON file")
      ->required();
  recover->add_option("--out-dir", out_dir, "Output directory")->required();
  recover->add_option("--format", recover_format, "html, md or both")
      ->check(CLI::IsMember({"html", "md", "both"}));

  // convert-table
  auto* convert = app.add_subcommand(
      "convert-table", "Convert between table representations");
  std::string conv_in, conv_from, conv_to, conv_vocab = "merged";
  convert->add_option("--in", conv_in, "Input file")->required();
  convert->add_option("--from", conv_from, "html or tokens")
      ->required()
      ->check(CLI::IsMember({"html", "tokens"}));
  convert->add_option("--to", conv_to, "html, tokens or markdown")
      ->required()
      ->check(CLI::IsMember({"html", "tokens", "markdown"}));
  convert->add_option("--vocab", conv_vocab, "merged or split")
      ->check(CLI::IsMember({"merged", "split"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval_layout->parsed()) {
      docstruct::LayoutEvalOptions options;
      options.coco = layout_iou == "coco";
      emit_report(docstruct::run_layout_eval(layout_pred, layout_gt, options),
                  layout_out);
    } else if (eval_table->parsed()) {
      docstruct::TableEvalOptions options;
      options.max_tokens = max_tokens;
      options.struct_only = struct_only;
      options.lenient = table_lenient;
      options.threads = table_threads;
      std::vector<docstruct::Diagnostic> diags;
      const EvalReport report =
          docstruct::run_table_eval(table_pred, table_gt, options, &diags);
      print_diagnostics(diags);
      emit_report(report, table_out);
    } else if (eval_kie->parsed()) {
      const docstruct::KieTask task = kie_task == "ser"
                                          ? docstruct::KieTask::kSer
                                          : docstruct::KieTask::kRe;
      emit_report(docstruct::run_kie_eval(kie_pred, kie_gt, task), kie_out);
    } else if (sort_cmd->parsed()) {
      const std::vector<Box> boxes = read_boxes_file(sort_boxes);
      std::vector<std::size_t> order;
      if (sort_algo == "yx") {
        order = docstruct::sort_yx(boxes);
      } else {
        order = docstruct::sort_tb_yx(boxes, order_config_from_th(sort_th));
      }
      Json out = Json::array();
      for (std::size_t i : order) out.push_back(i);
      std::cout << out.dump() << "\n";
    } else if (recover->parsed()) {
      docstruct::RecoverOptions options;
      options.format = recover_format == "html"
                           ? docstruct::RecoverFormat::kHtml
                           : recover_format == "md"
                                 ? docstruct::RecoverFormat::kMarkdown
                                 : docstruct::RecoverFormat::kBoth;
      const docstruct::RecoverSummary summary =
          docstruct::run_recover(bundle_path, out_dir, options);
      for (const std::string& warning : summary.warnings) {
        std::cerr << "warning: " << warning << "\n";
      }
      Json out;
      out["pages"] = summary.n_pages;
      out["files"] = summary.files_written;
      std::cout << out.dump() << "\n";
    } else if (convert->parsed()) {
      docstruct::TableGrid grid;
      if (conv_from == "html") {
        grid = docstruct::parse_html_table(read_text_file(conv_in));
      } else {
        const std::string content = read_text_file(conv_in);
        Json j;
        try {
          j = Json::parse(content);
        } catch (const Json::exception& e) {
          throw docstruct::ParseError("'" + conv_in + "': malformed JSON: " +
                                      e.what());
        }
        if (!j.is_array()) {
          throw docstruct::ValidationError(
              "'" + conv_in + "': expected a JSON array of token strings");
        }
        std::vector<std::string> strings;
        for (const Json& t : j) {
          if (!t.is_string()) {
            throw docstruct::ValidationError(
                "'" + conv_in + "': tokens must be strings");
          }
          strings.push_back(t.get<std::string>());
        }
        grid = docstruct::tokens_to_grid(
            docstruct::strings_to_tokens(strings));
      }
      if (conv_to == "html") {
        std::cout << docstruct::table_to_html(grid) << "\n";
      } else if (conv_to == "markdown") {
        std::cout << docstruct::table_to_markdown(grid);
      } else {
        const docstruct::VocabularyForm form =
            conv_vocab == "merged" ? docstruct::VocabularyForm::kMerged
                                   : docstruct::VocabularyForm::kSplit;
        const docstruct::TokenSequence seq =
            docstruct::grid_to_tokens(grid, form);
        // Dataset convention: emit without the table wrapper.
        std::vector<std::string> strings = docstruct::tokens_to_strings(seq);
        Json out = Json::array();
        for (std::size_t i = 1; i + 1 < strings.size(); ++i) {
          out.push_back(strings[i]);
        }
        std::cout << out.dump() << "\n";
      }
    }
  } catch (const docstruct::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
