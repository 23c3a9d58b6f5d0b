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

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "satd/label.hpp"

namespace httplib {
class Server;
}

namespace satd::testing {

// In-process Protocol v1 server for client and conformance tests.
class StubServer {
 public:
  struct Behavior {
    std::string model_name = "stub-pattern-model";
    std::vector<std::string> labels;  // empty = the six canonical wire names
    int max_length = 128;
    // Scores for one text; default puts 0.5 on the default-pattern label.
    std::function<PerLabel<double>(const std::string&)> scorer;
    std::size_t fail_first = 0;   // first N /classify calls answer 503
    bool always_fail = false;
    bool omit_scores = false;
    std::chrono::milliseconds delay{0};  // per /classify call
  };

  StubServer();
  explicit StubServer(Behavior behavior);
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  std::string url() const;
  std::size_t classify_calls() const noexcept { return calls_; }
  std::size_t max_concurrency() const noexcept { return peak_; }
  std::vector<std::size_t> batch_sizes() const;

  static PerLabel<double> pattern_scores(const std::string& text);
  static PerLabel<double> uniform_scores(const std::string& text);

 private:
  Behavior behavior_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> active_{0};
  std::atomic<std::size_t> peak_{0};
  mutable std::mutex mutex_;
  std::vector<std::size_t> batch_sizes_;
};

// Nothing listens on port 1; connections are refused immediately.
inline constexpr const char* kDeadEndpoint = "http://127.0.0.1:1";

}  // namespace satd::testing
