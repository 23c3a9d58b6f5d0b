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

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace satd {

/// Six-way comment taxonomy. Enumerator order is the canonical label order
/// used for score vectors, tie-breaking and every serialized label list.
enum class Label : std::size_t {
  NonSatd = 0,
  CodeDesign,
  Documentation,
  Test,
  Requirement,
  Scientific,
};

inline constexpr std::size_t kLabelCount = 6;

inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::NonSatd, Label::CodeDesign,  Label::Documentation,
    Label::Test,    Label::Requirement, Label::Scientific,
};

constexpr std::size_t index_of(Label label) noexcept {
  return static_cast<std::size_t>(label);
}

constexpr Label label_at(std::size_t index) noexcept {
  return static_cast<Label>(index);
}

// "non-satd", "code-design", ...
std::string_view wire_name(Label label) noexcept;
std::optional<Label> parse_wire_name(std::string_view name) noexcept;
// Throws Error{UnknownLabel}.
Label decode_label(std::string_view name);

// Column captions used by the rendered tables (REQ, C/D, DOC, ...).
std::string_view short_name(Label label) noexcept;

template <typename T>
using PerLabel = std::array<T, kLabelCount>;

}  // namespace satd
