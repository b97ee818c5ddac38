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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

/// Dense vocabulary index. A distinct type so ids never mix with counts or
/// positions.
enum class TokenId : std::int32_t {};

constexpr std::size_t index_of(TokenId id) { return static_cast<std::size_t>(id); }
constexpr TokenId token_id(std::size_t index) { return static_cast<TokenId>(index); }

using TokenSeq = std::vector<TokenId>;
using TokenSpan = std::span<const TokenId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: corpora, model files, datasets, configs.
class DataError : public Error {
 public:
  using Error::Error;
};

class UnknownTokenError : public DataError {
 public:
  explicit UnknownTokenError(std::string token)
      : DataError("unknown token '" + token + "'"), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// A language-model backend failed to answer a query.
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace holo
