/*
 * Copyright 2026 The satdscan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <string>

#include "satd/corpus.hpp"

namespace satd {

// Offline provider: rotates word order by moving the first word to the end.
// The token multiset is preserved; one-word texts come back unchanged.
class StubParaphraseProvider final : public ParaphraseProvider {
 public:
  std::string paraphrase(const std::string& text) override;
};

// Two-turn dialog sent to an OpenAI-style chat-completions endpoint: the
// system prompt, an instruction turn, a canned assistant acknowledgement and
// then the text itself. "{text}" in `request_template` is substituted.
struct ChatPromptTemplate {
  std::string system = "You are a careful technical editor of source-code comments.";
  std::string instruction =
      "I will send you a comment written by a developer of scientific software. "
      "Rephrase it once so that its meaning, and in particular any admission of "
      "technical debt, is preserved. Reply with the rephrased comment only.";
  std::string acknowledgement = "Understood. Send the comment and I will return one paraphrase.";
  std::string request_template = "{text}";
};

struct ChatEndpoint {
  std::string base_url = "http://127.0.0.1:8000";  // scheme://host:port
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-4o-mini";
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::milliseconds timeout{30000};
};

class HttpChatParaphraseProvider final : public ParaphraseProvider {
 public:
  HttpChatParaphraseProvider(ChatEndpoint endpoint, ChatPromptTemplate prompt = {});

  // Throws Error{ProviderUnavailable} on transport failure or 5xx,
  // Error{ProviderRejectedText} on 4xx or an empty completion.
  std::string paraphrase(const std::string& text) override;

  // The JSON request body, exposed for protocol tests.
  std::string request_body(const std::string& text) const;

 private:
  ChatEndpoint endpoint_;
  ChatPromptTemplate prompt_;
};

}  // namespace satd
