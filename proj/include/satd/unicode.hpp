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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace satd::unicode {

// Returns valid UTF-8; each ill-formed byte sequence becomes U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

// Decodes already-valid UTF-8 (ill-formed input decodes to U+FFFD).
std::vector<char32_t> decode(std::string_view utf8);
void append_utf8(std::string& out, char32_t code_point);
std::string encode(const std::vector<char32_t>& code_points);

// First `max_code_points` code points of valid UTF-8 text.
std::string truncate(std::string_view utf8, std::size_t max_code_points);

// Unicode "Alphabetic" derived property.
bool is_alphabetic(char32_t c) noexcept;
// Simple (1:1) case mapping to the lowercase form of the uppercase form.
// Unlike plain lowercasing this is stable under prior uppercasing, so
// fold_case(c) == fold_case(to_upper(c)) for every code point.
char32_t fold_case(char32_t c) noexcept;
char32_t to_upper(char32_t c) noexcept;
char32_t to_lower(char32_t c) noexcept;

std::string to_upper(std::string_view utf8);

}  // namespace satd::unicode
