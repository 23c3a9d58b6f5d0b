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

#include "satd/label.hpp"

#include <string>

#include "satd/error.hpp"

namespace satd {

namespace {
constexpr std::array<std::string_view, kLabelCount> kWireNames = {
    "non-satd", "code-design", "documentation", "test", "requirement", "scientific",
};
constexpr std::array<std::string_view, kLabelCount> kShortNames = {
    "Non-SATD", "C/D", "DOC", "TES", "REQ", "SCI",
};
}  // namespace

std::string_view wire_name(Label label) noexcept { return kWireNames[index_of(label)]; }

std::string_view short_name(Label label) noexcept { return kShortNames[index_of(label)]; }

std::optional<Label> parse_wire_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (kWireNames[i] == name) return label_at(i);
  }
  return std::nullopt;
}

Label decode_label(std::string_view name) {
  if (auto label = parse_wire_name(name)) return *label;
  throw Error(ErrorCode::UnknownLabel, "'" + std::string(name) + "'");
}

}  // namespace satd
