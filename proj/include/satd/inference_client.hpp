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
#include <cstddef>
#include <memory>
#include <semaphore>
#include <span>
#include <string>
#include <vector>

#include "satd/classifier.hpp"

namespace satd {

inline constexpr int kProtocolMinMaxLength = 16;

struct ServerInfo {
  std::string model_name;
  std::vector<std::string> labels;
  int max_length = 0;
};

struct InferenceEndpoint {
  std::string base_url = "http://127.0.0.1:8080";
  std::chrono::milliseconds timeout{10000};
  std::size_t max_batch = 32;
  std::size_t retries = 2;          // extra attempts after the first
  std::size_t max_in_flight = 4;    // concurrent requests per client
  std::chrono::milliseconds backoff{100};  // doubled after every failed attempt

  // Throws Error{InvalidArgument}.
  void validate() const;
};

/// GET /health then GET /info; the advertised labels must be the six wire
/// names in canonical order.
/// Throws Error{Unreachable, LabelContractViolation, MalformedResponse}.
ServerInfo handshake(const InferenceEndpoint& endpoint);

/// POST /classify in chunks of at most max_batch texts, up to max_in_flight
/// at a time, with per-chunk retry and exponential backoff. Results keep
/// input order. Any chunk that still fails fails the whole call.
/// Throws Error{BackendFailure} naming the chunk's [begin, end) range, or
/// Error{MalformedResponse}.
std::vector<Classification> classify_remote(std::span<const std::string> texts,
                                            const InferenceEndpoint& endpoint);
// Same, drawing request slots from a caller-owned limiter.
std::vector<Classification> classify_remote(std::span<const std::string> texts, const InferenceEndpoint& endpoint,
                                            std::counting_semaphore<>& in_flight);

// Classifier adapter; performs the handshake on construction. Concurrent
// classify() calls share one max_in_flight budget.
class RemoteClassifier final : public Classifier {
 public:
  explicit RemoteClassifier(InferenceEndpoint endpoint);

  const ServerInfo& info() const noexcept { return info_; }
  std::vector<Classification> classify(std::span<const std::string> texts) const override;
  std::string describe() const override;

 private:
  InferenceEndpoint endpoint_;
  ServerInfo info_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

// Protocol v1 payload codecs.
namespace protocol {
std::string encode_classify_request(std::span<const std::string> texts);
std::string encode_result(const Classification& c);
// Throws Error{MalformedResponse}.
Classification decode_result(const std::string& json);
std::vector<Classification> decode_classify_response(const std::string& body, std::size_t expected);
ServerInfo decode_info(const std::string& body);
// Throws Error{LabelContractViolation} or Error{MalformedResponse}.
void validate_info(const ServerInfo& info);
}  // namespace protocol

}  // namespace satd
