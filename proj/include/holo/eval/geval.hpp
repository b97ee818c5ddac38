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

#include <chrono>
#include <string>
#include <string_view>

namespace holo {

enum class Aspect { kInformativeness, kCoherence, kHumanness };

/// Accepts the lowercase aspect names. Throws std::invalid_argument otherwise.
Aspect parse_aspect(std::string_view name);
std::string_view aspect_name(Aspect aspect);
std::string_view aspect_criteria(Aspect aspect);

/// Form-filling evaluation prompt for one aspect, with the dialogue history
/// and response slotted in. Ends with "Score:" so the completion starts with
/// the number.
std::string render_geval_prompt(Aspect aspect, std::string_view history, std::string_view response);

/// Chat-completion endpoint. Request body:
///   {"model": ..., "messages": [{"role": "user", "content": prompt}],
///    "temperature": 0, "max_tokens": ...}
/// Response body: {"choices": [{"message": {"content": text}}]}.
/// The bearer token is read from HOLO_LLM_TOKEN when the call is made.
struct GEvalEndpoint {
  bool enabled = false;
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model;
  int max_tokens = 8;
  int timeout_seconds = 60;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{8000};
  /// Lower bound between consecutive requests from this process.
  std::chrono::milliseconds min_interval{1000};
};

/// First standalone integer in 1..5 found in `completion`. Throws
/// BackendError when there is none.
int parse_geval_score(std::string_view completion);

/// Sends the prompt and parses the score. Network errors and 5xx/429
/// responses are retried with doubling backoff; other failures throw
/// BackendError immediately. Throws std::logic_error if not enabled.
int geval_score(const GEvalEndpoint& endpoint, const std::string& prompt);

}  // namespace holo
