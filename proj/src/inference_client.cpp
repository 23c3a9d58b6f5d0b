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

#include "satd/inference_client.hpp"

#include <httplib.h>

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <semaphore>
#include <thread>

#include <json.hpp>

#include "satd/error.hpp"

namespace satd {

using nlohmann::json;

void InferenceEndpoint::validate() const {
  if (max_batch == 0) throw Error(ErrorCode::InvalidArgument, "max_batch must be at least 1");
  if (max_in_flight == 0) throw Error(ErrorCode::InvalidArgument, "max_in_flight must be at least 1");
  if (base_url.empty()) throw Error(ErrorCode::InvalidArgument, "empty endpoint URL");
}

namespace protocol {

namespace {

Classification decode_result_object(const json& j) {
  if (!j.is_object() || !j.contains("label") || !j.contains("scores")) {
    throw Error(ErrorCode::MalformedResponse, "result needs \"label\" and \"scores\"");
  }
  if (!j["label"].is_string() || !j["scores"].is_object()) {
    throw Error(ErrorCode::MalformedResponse, "result has wrong field types");
  }
  const auto label = parse_wire_name(j["label"].get<std::string>());
  if (!label) throw Error(ErrorCode::MalformedResponse, "unknown label " + j["label"].dump());

  const json& scores = j["scores"];
  if (scores.size() != kLabelCount) throw Error(ErrorCode::MalformedResponse, "scores must cover six labels");
  PerLabel<double> values{};
  double sum = 0.0;
  for (Label l : kAllLabels) {
    const auto it = scores.find(std::string(wire_name(l)));
    if (it == scores.end() || !it->is_number()) {
      throw Error(ErrorCode::MalformedResponse, "missing score for " + std::string(wire_name(l)));
    }
    const double v = it->get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::MalformedResponse, "score outside [0,1]");
    values[index_of(l)] = v;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw Error(ErrorCode::MalformedResponse, "scores do not sum to 1");
  // The server's label must be one of the maxima; ties resolve canonically.
  Classification c = make_classification(values);
  if (values[index_of(*label)] != values[index_of(c.label)]) {
    throw Error(ErrorCode::MalformedResponse, "label is not the argmax of its scores");
  }
  return c;
}

json result_object(const Classification& c) {
  json scores = json::object();
  for (Label l : kAllLabels) scores[std::string(wire_name(l))] = c.scores[index_of(l)];
  return json{{"label", wire_name(c.label)}, {"scores", scores}};
}

json parse(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, e.what());
  }
}

}  // namespace

std::string encode_classify_request(std::span<const std::string> texts) {
  return json{{"texts", json(std::vector<std::string>(texts.begin(), texts.end()))}}.dump();
}

std::string encode_result(const Classification& c) { return result_object(c).dump(); }

Classification decode_result(const std::string& text) { return decode_result_object(parse(text)); }

std::vector<Classification> decode_classify_response(const std::string& body, std::size_t expected) {
  const json j = parse(body);
  if (!j.is_object() || !j.contains("results") || !j["results"].is_array()) {
    throw Error(ErrorCode::MalformedResponse, "response needs a \"results\" array");
  }
  if (j["results"].size() != expected) {
    throw Error(ErrorCode::MalformedResponse, "expected " + std::to_string(expected) + " results, got " +
                                                  std::to_string(j["results"].size()));
  }
  std::vector<Classification> out;
  out.reserve(expected);
  for (const auto& r : j["results"]) out.push_back(decode_result_object(r));
  return out;
}

ServerInfo decode_info(const std::string& body) {
  const json j = parse(body);
  try {
    ServerInfo info;
    info.model_name = j.at("model_name").get<std::string>();
    info.labels = j.at("labels").get<std::vector<std::string>>();
    info.max_length = j.at("max_length").get<int>();
    return info;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("/info: ") + e.what());
  }
}

void validate_info(const ServerInfo& info) {
  bool ok = info.labels.size() == kLabelCount;
  for (std::size_t l = 0; ok && l < kLabelCount; ++l) ok = info.labels[l] == wire_name(label_at(l));
  if (!ok) {
    json expected = json::array();
    for (Label l : kAllLabels) expected.push_back(wire_name(l));
    throw Error(ErrorCode::LabelContractViolation,
                "server labels " + json(info.labels).dump() + ", expected " + expected.dump());
  }
  if (info.max_length < kProtocolMinMaxLength) {
    throw Error(ErrorCode::MalformedResponse, "max_length " + std::to_string(info.max_length) + " < 16");
  }
}

}  // namespace protocol

namespace {

httplib::Client make_client(const InferenceEndpoint& endpoint) {
  httplib::Client client(endpoint.base_url);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  return client;
}

void sleep_backoff(const InferenceEndpoint& endpoint, std::size_t attempt) {
  std::this_thread::sleep_for(endpoint.backoff * (1LL << std::min<std::size_t>(attempt, 10)));
}

// GET with retries; returns the body of the first 200 response.
std::string get_with_retry(const InferenceEndpoint& endpoint, const std::string& path) {
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) sleep_backoff(endpoint, attempt - 1);
    auto client = make_client(endpoint);
    auto response = client.Get(path);
    if (!response) {
      last_error = httplib::to_string(response.error());
      continue;
    }
    if (response->status == 200) return response->body;
    last_error = "HTTP " + std::to_string(response->status);
    if (response->status < 500) break;
  }
  throw Error(ErrorCode::Unreachable, endpoint.base_url + path + " after " +
                                          std::to_string(endpoint.retries + 1) + " attempts: " + last_error);
}

struct ChunkOutcome {
  std::vector<Classification> results;
  std::optional<Error> error;
};

ChunkOutcome classify_chunk(const InferenceEndpoint& endpoint, std::span<const std::string> texts,
                            std::size_t begin, std::counting_semaphore<>& in_flight) {
  const std::string range = "[" + std::to_string(begin) + ", " + std::to_string(begin + texts.size()) + ")";
  const std::string body = protocol::encode_classify_request(texts);
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) sleep_backoff(endpoint, attempt - 1);
    in_flight.acquire();
    httplib::Result response = [&] {
      auto client = make_client(endpoint);
      return client.Post("/classify", body, "application/json");
    }();
    in_flight.release();
    if (!response) {
      last_error = httplib::to_string(response.error());
      continue;
    }
    if (response->status == 200) {
      try {
        return {protocol::decode_classify_response(response->body, texts.size()), std::nullopt};
      } catch (const Error& e) {
        return {{}, Error(ErrorCode::MalformedResponse, "chunk " + range + ": " + e.what())};
      }
    }
    last_error = "HTTP " + std::to_string(response->status) + " " + response->body;
    if (response->status < 500) break;
  }
  return {{}, Error(ErrorCode::BackendFailure, "chunk " + range + ": " + last_error)};
}

}  // namespace

ServerInfo handshake(const InferenceEndpoint& endpoint) {
  endpoint.validate();
  const std::string health = get_with_retry(endpoint, "/health");
  try {
    if (json::parse(health).at("status").get<std::string>() != "ok") {
      throw Error(ErrorCode::Unreachable, endpoint.base_url + "/health is not ok");
    }
  } catch (const json::exception&) {
    throw Error(ErrorCode::MalformedResponse, "/health body: " + health);
  }
  ServerInfo info = protocol::decode_info(get_with_retry(endpoint, "/info"));
  protocol::validate_info(info);
  return info;
}

std::vector<Classification> classify_remote(std::span<const std::string> texts,
                                            const InferenceEndpoint& endpoint) {
  endpoint.validate();
  std::counting_semaphore<> in_flight(static_cast<std::ptrdiff_t>(endpoint.max_in_flight));
  return classify_remote(texts, endpoint, in_flight);
}

std::vector<Classification> classify_remote(std::span<const std::string> texts, const InferenceEndpoint& endpoint,
                                            std::counting_semaphore<>& in_flight) {
  endpoint.validate();
  if (texts.empty()) return {};
  const std::size_t chunks = (texts.size() + endpoint.max_batch - 1) / endpoint.max_batch;
  std::vector<ChunkOutcome> outcomes(chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = c * endpoint.max_batch;
      const std::size_t count = std::min(endpoint.max_batch, texts.size() - begin);
      outcomes[c] = classify_chunk(endpoint, texts.subspan(begin, count), begin, in_flight);
    }
  };
  {
    std::vector<std::jthread> workers;
    const std::size_t threads = std::min(chunks, endpoint.max_in_flight);
    for (std::size_t t = 0; t < threads; ++t) workers.emplace_back(worker);
  }

  std::vector<Classification> out;
  out.reserve(texts.size());
  for (auto& outcome : outcomes) {
    if (outcome.error) throw *outcome.error;
    std::move(outcome.results.begin(), outcome.results.end(), std::back_inserter(out));
  }
  return out;
}

RemoteClassifier::RemoteClassifier(InferenceEndpoint endpoint)
    : endpoint_(std::move(endpoint)),
      info_(handshake(endpoint_)),
      in_flight_(std::make_unique<std::counting_semaphore<>>(static_cast<std::ptrdiff_t>(endpoint_.max_in_flight))) {}

std::vector<Classification> RemoteClassifier::classify(std::span<const std::string> texts) const {
  return classify_remote(texts, endpoint_, *in_flight_);
}

std::string RemoteClassifier::describe() const {
  return "remote(" + info_.model_name + " @ " + endpoint_.base_url + ")";
}

}  // namespace satd
