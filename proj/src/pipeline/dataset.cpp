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

#include "holo/pipeline/dataset.hpp"

#include <fstream>

#include "holo/common.hpp"

namespace holo {

Dataset read_dataset(std::istream& in, bool require_reference) {
  Dataset out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      out.errors.push_back({line, "not a JSON object"});
      continue;
    }
    const auto context = j.find("context");
    if (context == j.end() || !context->is_string()) {
      out.errors.push_back({line, "missing string field 'context'"});
      continue;
    }
    DatasetRow row{line, context->get<std::string>(), std::nullopt};
    if (const auto ref = j.find("reference"); ref != j.end()) {
      if (!ref->is_string()) {
        out.errors.push_back({line, "field 'reference' is not a string"});
        continue;
      }
      row.reference = ref->get<std::string>();
    }
    if (require_reference && !row.reference) {
      out.errors.push_back({line, "missing string field 'reference'"});
      continue;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Dataset read_dataset_file(const std::filesystem::path& path, bool require_reference) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return read_dataset(in, require_reference);
}

nlohmann::json to_json(const RowError& error) { return {{"line", error.line}, {"error", error.message}}; }

}  // namespace holo
