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

#include "conformance.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "fixtures.hpp"
#include "satd/label.hpp"

namespace satd::testing {

using nlohmann::json;

namespace {

std::string check_results(const json& body, std::size_t expected) {
  if (!body.contains("results") || !body["results"].is_array()) return "no results array";
  if (body["results"].size() != expected) return "wrong result count";
  for (const auto& r : body["results"]) {
    if (!r.contains("label") || !r["label"].is_string() || !parse_wire_name(r["label"].get<std::string>())) {
      return "bad label in " + r.dump();
    }
    if (!r.contains("scores") || !r["scores"].is_object() || r["scores"].size() != kLabelCount) {
      return "bad scores in " + r.dump();
    }
    double sum = 0.0;
    double best = -1.0;
    for (Label l : kAllLabels) {
      const auto it = r["scores"].find(std::string(wire_name(l)));
      if (it == r["scores"].end() || !it->is_number()) return "missing score in " + r.dump();
      sum += it->get<double>();
      best = std::max(best, it->get<double>());
    }
    if (std::abs(sum - 1.0) > 1e-6) return "scores do not sum to 1 in " + r.dump();
    if (r["scores"][r["label"].get<std::string>()].get<double>() != best) return "label is not an argmax";
  }
  return {};
}

std::string check(const json& fixture, const std::string& base_url) {
  const json& request = fixture.at("request");
  const json& expect = fixture.at("response");
  httplib::Client client(base_url);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  const std::string method = request.at("method");
  const std::string path = request.at("path");
  httplib::Result res;
  if (method == "GET") {
    res = client.Get(path);
  } else {
    const std::string body = request.contains("raw_body") ? request["raw_body"].get<std::string>()
                                                          : request.value("body", json::object()).dump();
    res = client.Post(path, body, "application/json");
  }
  if (!res) return "no response: " + httplib::to_string(res.error());
  if (res->status != expect.at("status").get<int>()) return "status " + std::to_string(res->status);

  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::exception&) {
    return "body is not JSON: " + res->body;
  }
  if (expect.contains("body") && body != expect["body"]) return "body " + body.dump();
  if (expect.contains("body_subset")) {
    for (const auto& [key, value] : expect["body_subset"].items()) {
      if (!body.contains(key) || body[key] != value) return "field " + key + " = " + body.value(key, json()).dump();
    }
  }
  for (const auto& key : expect.value("string_fields", json::array())) {
    if (!body.contains(key.get<std::string>()) || !body[key.get<std::string>()].is_string()) {
      return "missing string field " + key.dump();
    }
  }
  if (expect.value("error", false) && !(body.contains("error") && body["error"].is_string())) {
    return "no error message";
  }
  if (expect.contains("results")) return check_results(body, expect["results"].get<std::size_t>());
  return {};
}

}  // namespace

std::vector<ConformanceOutcome> run_conformance(const std::filesystem::path& dir, const std::string& base_url) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ConformanceOutcome> out;
  for (const auto& f : files) {
    ConformanceOutcome o;
    o.fixture = f.filename().string();
    try {
      o.detail = check(json::parse(read_file(f)), base_url);
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
    o.passed = o.detail.empty();
    out.push_back(o);
  }
  return out;
}

}  // namespace satd::testing
