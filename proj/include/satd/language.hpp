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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satd {

enum class LanguageId { C, Cpp, Python, Perl, Fortran, TypeScript, Go, Php, Java };

inline constexpr std::size_t kLanguageCount = 9;

// Lowercase identifiers used on the command line and in JSONL output.
std::string_view language_name(LanguageId id) noexcept;
std::optional<LanguageId> parse_language_name(std::string_view name) noexcept;

struct BlockDelimiter {
  std::string open;
  std::string close;
};

struct QuoteRule {
  std::string open;
  std::string close;
  bool multiline = false;
  bool backslash_escapes = true;
  // Fortran style: a doubled closing quote is a literal quote.
  bool doubled_escapes = false;
};

// Lexical facts the comment scanner needs about one language. Only the
// comment and string states are modeled; everything else is "code".
struct SourceLanguage {
  LanguageId id = LanguageId::C;
  std::vector<std::string> line_markers;
  std::vector<BlockDelimiter> block_delimiters;
  std::vector<QuoteRule> string_rules;  // longest opener first
  bool fixed_form = false;              // Fortran: C/c/*/! in column 1
  bool pod_blocks = false;              // Perl: =pod .. =cut

  std::string_view name() const noexcept { return language_name(id); }
};

// Fortran has two layouts; `fixed_form` is ignored for other languages.
SourceLanguage source_language(LanguageId id, bool fixed_form = false);

struct ExtensionMapping {
  std::string_view extension;  // lowercase, with leading dot
  LanguageId language;
  bool fixed_form;
};

// The complete extension table; each extension appears once.
std::span<const ExtensionMapping> extension_table() noexcept;

// Case-insensitive on the extension. Empty for unsupported files.
std::optional<SourceLanguage> detect_language(const std::filesystem::path& file_path);

}  // namespace satd
