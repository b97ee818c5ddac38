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

#include "holo/lm/remote_lm.hpp"

#include <httplib.h>

#include <algorithm>
#include <stdexcept>

namespace holo {
namespace {

std::vector<std::int32_t> raw_ids(TokenSpan ids) {
  std::vector<std::int32_t> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(static_cast<std::int32_t>(id));
  return out;
}

TokenSeq parse_ids(const nlohmann::json& j, std::size_t vocab_size) {
  TokenSeq out;
  for (const auto& v : j) {
    const auto raw = v.get<std::int64_t>();
    if (raw < 0 || static_cast<std::size_t>(raw) >= vocab_size) {
      throw UnknownTokenError("#" + std::to_string(raw));
    }
    out.push_back(token_id(static_cast<std::size_t>(raw)));
  }
  return out;
}

}  // namespace

RemoteLM::RemoteLM(Vocabulary vocab, RemoteEndpoint endpoint)
    : vocab_(std::move(vocab)), endpoint_(std::move(endpoint)) {
  if (endpoint_.top_n < 1) throw std::invalid_argument("remote top_n must be positive");
}

nlohmann::json make_next_token_request(TokenSpan context, TokenSpan prefix, int top_n) {
  return {{"context", raw_ids(context)}, {"prefix", raw_ids(prefix)}, {"top_n", top_n}};
}

SparseDist RemoteLM::parse_response(const nlohmann::json& body, std::size_t vocab_size) {
  try {
    std::vector<DistEntry> entries;
    double previous = 2.0;
    for (const auto& pair : body.at("entries")) {
      if (!pair.is_array() || pair.size() != 2) throw BackendError("remote entry is not an [id, prob] pair");
      const auto raw = pair[0].get<std::int64_t>();
      const double prob = pair[1].get<double>();
      if (raw < 0 || static_cast<std::size_t>(raw) >= vocab_size) {
        throw BackendError("remote entry id " + std::to_string(raw) + " outside the vocabulary");
      }
      if (prob > previous) throw BackendError("remote entries are not sorted by descending probability");
      previous = prob;
      entries.push_back({token_id(static_cast<std::size_t>(raw)), prob});
    }
    const double residual = body.at("residual").get<double>();
    if (residual < 0.0 || residual > 1.0) throw BackendError("remote residual outside [0, 1]");
    return SparseDist(std::move(entries), vocab_size);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed remote response: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw BackendError(std::string("invalid remote distribution: ") + e.what());
  }
}

SparseDist RemoteLM::next_token_dist(TokenSpan context, TokenSpan prefix) const {
  vocab_.check(context);
  vocab_.check(prefix);
  httplib::Client client(endpoint_.base_url);
  client.set_connection_timeout(endpoint_.timeout_seconds, 0);
  client.set_read_timeout(endpoint_.timeout_seconds, 0);
  const auto body = make_next_token_request(context, prefix, endpoint_.top_n).dump();
  auto res = client.Post(endpoint_.path, body, "application/json");
  if (!res) {
    throw BackendError("remote LM request to " + endpoint_.base_url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError("remote LM returned HTTP " + std::to_string(res->status));
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("remote LM sent invalid JSON: ") + e.what());
  }
  return parse_response(parsed, vocab_.size());
}

nlohmann::json answer_next_token_request(const LanguageModel& lm, const nlohmann::json& request) {
  const std::size_t v = lm.vocabulary().size();
  const TokenSeq context = parse_ids(request.at("context"), v);
  const TokenSeq prefix = parse_ids(request.at("prefix"), v);
  const auto top_n = request.at("top_n").get<std::int64_t>();
  if (top_n < 1) throw std::invalid_argument("top_n must be positive");

  auto ranked = lm.next_token_dist(context, prefix).ranked();
  if (ranked.size() > static_cast<std::size_t>(top_n)) ranked.resize(static_cast<std::size_t>(top_n));
  nlohmann::json entries = nlohmann::json::array();
  double sent = 0.0;
  for (const auto& e : ranked) {
    entries.push_back({static_cast<std::int32_t>(e.id), e.prob});
    sent += e.prob;
  }
  return {{"entries", entries}, {"residual", std::max(0.0, 1.0 - sent)}};
}

LmServer::LmServer(const LanguageModel& lm, std::string path)
    : lm_(lm), path_(std::move(path)), server_(std::make_unique<httplib::Server>()) {
  server_->Post(path_, [this](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto reply = answer_next_token_request(lm_, nlohmann::json::parse(req.body));
      res.set_content(reply.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

LmServer::~LmServer() { stop(); }

int LmServer::start() {
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ < 0) throw BackendError("could not bind the LM server");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void LmServer::stop() {
  if (thread_.joinable()) {
    server_->stop();
    thread_.join();
  }
}

std::string LmServer::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

}  // namespace holo
