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

#include "holo/eval/geval.hpp"

#include <httplib.h>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "holo/common.hpp"

namespace holo {
namespace {

constexpr std::string_view kInformativenessCriteria =
    "Informativeness is used for evaluating whether the response contains the semantic relevant information "
    "in the dialogue history. 1 score means the response just repeats the dialogue history and fails to "
    "provide additional information, and 5 score means the response has appropriate and correct information.";

constexpr std::string_view kCoherenceCriteria =
    "Coherence is used for evaluating whether the response is relevant and consistent with the dialogue "
    "history. 1 score means the response is not suitable or is inconsistent with the dialogue history, 5 "
    "score means the response is suitable and consistent with the context.";

constexpr std::string_view kHumannessCriteria =
    "Humanness is used for evaluating whether the response is similar to the tones of human beings. 1 score "
    "means the response is unnatural and the speaker seems not human-like, and 5 score means the response is "
    "natural and the speaker seems like a human being.";

// Serializes requests across the process so min_interval holds.
std::mutex& pacing_mutex() {
  static std::mutex m;
  return m;
}
std::chrono::steady_clock::time_point& last_request() {
  static std::chrono::steady_clock::time_point t{};
  return t;
}

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

Aspect parse_aspect(std::string_view name) {
  if (name == "informativeness") return Aspect::kInformativeness;
  if (name == "coherence") return Aspect::kCoherence;
  if (name == "humanness") return Aspect::kHumanness;
  throw std::invalid_argument("unknown aspect '" + std::string(name) +
                              "' (expected informativeness, coherence or humanness)");
}

std::string_view aspect_name(Aspect aspect) {
  switch (aspect) {
    case Aspect::kInformativeness: return "informativeness";
    case Aspect::kCoherence: return "coherence";
    case Aspect::kHumanness: return "humanness";
  }
  return "";
}

std::string_view aspect_criteria(Aspect aspect) {
  switch (aspect) {
    case Aspect::kInformativeness: return kInformativenessCriteria;
    case Aspect::kCoherence: return kCoherenceCriteria;
    case Aspect::kHumanness: return kHumannessCriteria;
  }
  return "";
}

std::string render_geval_prompt(Aspect aspect, std::string_view history, std::string_view response) {
  const std::string name(aspect_name(aspect));
  std::string out;
  out += "Task:\n\n";
  out += "Please make sure you read and understand the below instructs carefully. You will be provided a "
         "dialogue history and a response, you need to evaluate the " +
         name +
         " between them and output a score of 1 to 5. The detailed evaluation criteria are provided below.\n\n";
  out += "Evaluation Criteria:\n\n";
  out += aspect_criteria(aspect);
  out += "\n\nEvaluation Steps:\n\n";
  out += "1. Read the above task definition and the evaluation criteria carefully.\n";
  out += "2. Read the below given dialogue history and response carefully.\n";
  out += "3. Assign a score for " + name +
         " on a scale of 1 to 5, where 1 is the lowest and 5 is the highest based on the Evaluation Criteria.\n\n";
  out += "Dialogue history:\n\n";
  out += history;
  out += "\n\nResponse:\n\n";
  out += response;
  out += "\n\nScore:";
  return out;
}

int parse_geval_score(std::string_view completion) {
  std::size_t i = 0;
  while (i < completion.size()) {
    if (!std::isdigit(static_cast<unsigned char>(completion[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < completion.size() && std::isdigit(static_cast<unsigned char>(completion[j]))) ++j;
    // "4.5" is not an integer score; skip the whole number.
    const bool fractional = j + 1 < completion.size() && completion[j] == '.' &&
                            std::isdigit(static_cast<unsigned char>(completion[j + 1]));
    if (j - i == 1 && !fractional) {
      const int v = completion[i] - '0';
      if (v >= 1 && v <= 5) return v;
    }
    i = j;
    if (fractional) {
      ++i;
      while (i < completion.size() && std::isdigit(static_cast<unsigned char>(completion[i]))) ++i;
    }
  }
  throw BackendError("no score between 1 and 5 in completion: '" + std::string(completion) + "'");
}

int geval_score(const GEvalEndpoint& endpoint, const std::string& prompt) {
  if (!endpoint.enabled) throw std::logic_error("G-Eval scoring is disabled");
  if (endpoint.max_attempts < 1) throw std::invalid_argument("max_attempts must be positive");

  const nlohmann::json request = {
      {"model", endpoint.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", 0},
      {"max_tokens", endpoint.max_tokens}};
  const std::string body = request.dump();

  httplib::Headers headers;
  if (const char* token = std::getenv("HOLO_LLM_TOKEN"); token != nullptr && *token != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  httplib::Client client(endpoint.base_url);
  client.set_connection_timeout(endpoint.timeout_seconds, 0);
  client.set_read_timeout(endpoint.timeout_seconds, 0);

  std::chrono::milliseconds backoff = endpoint.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt < endpoint.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, endpoint.max_backoff);
    }
    httplib::Result res;
    {
      std::lock_guard lock(pacing_mutex());
      const auto next = last_request() + endpoint.min_interval;
      if (auto now = std::chrono::steady_clock::now(); now < next) std::this_thread::sleep_until(next);
      res = client.Post(endpoint.path, headers, body, "application/json");
      last_request() = std::chrono::steady_clock::now();
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (retryable(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw BackendError("G-Eval endpoint returned HTTP " + std::to_string(res->status));
    std::string content;
    try {
      content = nlohmann::json::parse(res->body).at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(std::string("malformed G-Eval response: ") + e.what());
    }
    return parse_geval_score(content);
  }
  throw BackendError("G-Eval request failed after " + std::to_string(endpoint.max_attempts) +
                     " attempts: " + last_error);
}

}  // namespace holo
