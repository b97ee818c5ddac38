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

#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "holo/lm/language_model.hpp"

namespace httplib {
class Server;
}

namespace holo {

/// Wire format (HTTP POST, JSON bodies):
///   request  {"context": [ids], "prefix": [ids], "top_n": int}
///   response {"entries": [[id, prob], ...], "residual": prob}
/// Entries are sorted by descending probability. `residual` is the mass the
/// server did not send; clients treat it as leaked, never redistribute it.
struct RemoteEndpoint {
  std::string base_url;  // e.g. "http://127.0.0.1:8080"
  std::string path = "/next_token";
  int top_n = 64;
  int timeout_seconds = 30;
};

class RemoteLM final : public LanguageModel {
 public:
  RemoteLM(Vocabulary vocab, RemoteEndpoint endpoint);

  const Vocabulary& vocabulary() const override { return vocab_; }
  /// Throws BackendError on transport failures and malformed responses.
  SparseDist next_token_dist(TokenSpan context, TokenSpan prefix) const override;

  /// Residual mass is part of the response; exposed for diagnostics.
  static SparseDist parse_response(const nlohmann::json& body, std::size_t vocab_size);

 private:
  Vocabulary vocab_;
  RemoteEndpoint endpoint_;
};

nlohmann::json make_next_token_request(TokenSpan context, TokenSpan prefix, int top_n);

/// Server side of the protocol: answers one request from `lm`, keeping the
/// top_n most probable entries (ties by ascending id).
nlohmann::json answer_next_token_request(const LanguageModel& lm, const nlohmann::json& request);

/// Serves `lm` over HTTP on a background thread until destroyed.
class LmServer {
 public:
  LmServer(const LanguageModel& lm, std::string path = "/next_token");
  ~LmServer();
  LmServer(const LmServer&) = delete;
  LmServer& operator=(const LmServer&) = delete;

  /// Binds to an ephemeral port on 127.0.0.1 and returns it.
  int start();
  void stop();
  std::string base_url() const;

 private:
  const LanguageModel& lm_;
  std::string path_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace holo
