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

#include "satd/paraphrase.hpp"

#include <httplib.h>

#include <json.hpp>

#include "satd/error.hpp"

namespace satd {

std::string StubParaphraseProvider::paraphrase(const std::string& text) {
  const auto space = text.find(' ');
  if (space == std::string::npos) return text;
  return text.substr(space + 1) + " " + text.substr(0, space);
}

HttpChatParaphraseProvider::HttpChatParaphraseProvider(ChatEndpoint endpoint, ChatPromptTemplate prompt)
    : endpoint_(std::move(endpoint)), prompt_(std::move(prompt)) {}

std::string HttpChatParaphraseProvider::request_body(const std::string& text) const {
  std::string request = prompt_.request_template;
  if (const auto at = request.find("{text}"); at != std::string::npos) {
    request.replace(at, 6, text);
  }
  nlohmann::ordered_json body;
  body["model"] = endpoint_.model;
  body["messages"] = nlohmann::json::array({
      {{"role", "system"}, {"content", prompt_.system}},
      {{"role", "user"}, {"content", prompt_.instruction}},
      {{"role", "assistant"}, {"content", prompt_.acknowledgement}},
      {{"role", "user"}, {"content", request}},
  });
  return body.dump();
}

std::string HttpChatParaphraseProvider::paraphrase(const std::string& text) {
  httplib::Client client(endpoint_.base_url);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(endpoint_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  httplib::Headers headers;
  if (!endpoint_.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint_.api_key);

  auto response = client.Post(endpoint_.path, headers, request_body(text), "application/json");
  if (!response) {
    throw Error(ErrorCode::ProviderUnavailable,
                endpoint_.base_url + ": " + httplib::to_string(response.error()));
  }
  if (response->status >= 500) {
    throw Error(ErrorCode::ProviderUnavailable, "HTTP " + std::to_string(response->status));
  }
  if (response->status >= 400) {
    throw Error(ErrorCode::ProviderRejectedText, "HTTP " + std::to_string(response->status));
  }
  try {
    const auto reply = nlohmann::json::parse(response->body);
    std::string content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    if (content.empty()) throw Error(ErrorCode::ProviderRejectedText, "empty completion");
    return content;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderRejectedText, std::string("unparseable completion: ") + e.what());
  }
}

}  // namespace satd
