// Copyright 2026 The holo-toolkit Authors.
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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace holo {

/// One JSONL line: {"context": "...", "reference": "..."}. The reference is
/// optional for generation and required for bench, eval and cover-rate.
struct DatasetRow {
  std::size_t line = 0;  // 1-based
  std::string context;
  std::optional<std::string> reference;
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct Dataset {
  std::vector<DatasetRow> rows;
  std::vector<RowError> errors;  // malformed lines, skipped
};

/// Blank lines are ignored. Lines that are not objects with a string
/// "context" (and, if present, a string "reference") land in `errors`.
Dataset read_dataset(std::istream& in, bool require_reference = false);
/// Throws DataError if the file cannot be opened.
Dataset read_dataset_file(const std::filesystem::path& path, bool require_reference = false);

nlohmann::json to_json(const RowError& error);

}  // namespace holo
