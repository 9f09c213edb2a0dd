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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace docstruct {

/// Base class for all toolkit errors. what() carries the full message,
/// including any provenance (file, line, byte offset) known at throw time.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input that failed lexing or decoding (bad token, bad JSON line).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg,
                      std::optional<std::size_t> position = std::nullopt)
      : Error(position ? msg + " (at " + std::to_string(*position) + ")" : msg),
        position_(position) {}
  std::optional<std::size_t> position() const { return position_; }

private:
  std::optional<std::size_t> position_;
};

/// Structurally invalid input: mismatched tags, overlapping spans, cells
/// outside rows.
class StructureError : public Error {
public:
  explicit StructureError(const std::string& msg,
                          std::optional<std::size_t> offset = std::nullopt)
      : Error(offset ? msg + " (byte " + std::to_string(*offset) + ")" : msg),
        offset_(offset) {}
  std::optional<std::size_t> offset() const { return offset_; }

private:
  std::optional<std::size_t> offset_;
};

/// Cell-token / coordinate count mismatch in structure-location alignment.
class AlignmentError : public Error {
public:
  AlignmentError(const std::string& context, std::size_t token_cells,
                 std::size_t coordinates)
      : Error(context + ": " + std::to_string(token_cells) +
              " cell tokens vs " + std::to_string(coordinates) +
              " coordinate entries"),
        token_cells_(token_cells),
        coordinates_(coordinates) {}
  std::size_t token_cells() const { return token_cells_; }
  std::size_t coordinates() const { return coordinates_; }

private:
  std::size_t token_cells_;
  std::size_t coordinates_;
};

/// Schema or value-domain violation in input data.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Filesystem failure (missing file, unwritable path).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace docstruct
