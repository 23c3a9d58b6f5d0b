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

#include "satd/language.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace satd {

namespace {

constexpr std::array<std::string_view, kLanguageCount> kNames = {
    "c", "cpp", "python", "perl", "fortran", "typescript", "go", "php", "java",
};

constexpr std::array<ExtensionMapping, 37> kExtensions = {{
    {".c", LanguageId::C, false},
    {".h", LanguageId::C, false},
    {".cc", LanguageId::Cpp, false},
    {".cpp", LanguageId::Cpp, false},
    {".cxx", LanguageId::Cpp, false},
    {".c++", LanguageId::Cpp, false},
    {".hh", LanguageId::Cpp, false},
    {".hpp", LanguageId::Cpp, false},
    {".hxx", LanguageId::Cpp, false},
    {".h++", LanguageId::Cpp, false},
    {".ipp", LanguageId::Cpp, false},
    {".tpp", LanguageId::Cpp, false},
    {".cu", LanguageId::Cpp, false},
    {".cuh", LanguageId::Cpp, false},
    {".py", LanguageId::Python, false},
    {".pyi", LanguageId::Python, false},
    {".pyw", LanguageId::Python, false},
    {".pyx", LanguageId::Python, false},
    {".pxd", LanguageId::Python, false},
    {".pl", LanguageId::Perl, false},
    {".pm", LanguageId::Perl, false},
    {".t", LanguageId::Perl, false},
    {".pod", LanguageId::Perl, false},
    {".f", LanguageId::Fortran, true},
    {".for", LanguageId::Fortran, true},
    {".f77", LanguageId::Fortran, true},
    {".ftn", LanguageId::Fortran, true},
    {".f90", LanguageId::Fortran, false},
    {".f95", LanguageId::Fortran, false},
    {".f03", LanguageId::Fortran, false},
    {".f08", LanguageId::Fortran, false},
    {".ts", LanguageId::TypeScript, false},
    {".tsx", LanguageId::TypeScript, false},
    {".mts", LanguageId::TypeScript, false},
    {".go", LanguageId::Go, false},
    {".php", LanguageId::Php, false},
    {".java", LanguageId::Java, false},
}};

QuoteRule quote(std::string open, bool multiline = false, bool backslash = true) {
  QuoteRule rule;
  rule.close = open;
  rule.open = std::move(open);
  rule.multiline = multiline;
  rule.backslash_escapes = backslash;
  return rule;
}

QuoteRule fortran_quote(std::string open) {
  QuoteRule rule = quote(std::move(open), false, false);
  rule.doubled_escapes = true;
  return rule;
}

}  // namespace

std::string_view language_name(LanguageId id) noexcept {
  return kNames[static_cast<std::size_t>(id)];
}

std::optional<LanguageId> parse_language_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<LanguageId>(i);
  }
  return std::nullopt;
}

SourceLanguage source_language(LanguageId id, bool fixed_form) {
  SourceLanguage lang;
  lang.id = id;
  const BlockDelimiter c_block{"/*", "*/"};
  switch (id) {
    case LanguageId::C:
    case LanguageId::Cpp:
      lang.line_markers = {"//"};
      lang.block_delimiters = {c_block};
      lang.string_rules = {quote("\""), quote("'")};
      break;
    case LanguageId::Java:
      lang.line_markers = {"//"};
      lang.block_delimiters = {c_block};
      lang.string_rules = {quote("\"\"\"", true), quote("\""), quote("'")};
      break;
    case LanguageId::Go:
      lang.line_markers = {"//"};
      lang.block_delimiters = {c_block};
      lang.string_rules = {quote("\""), quote("'"), quote("`", true, false)};
      break;
    case LanguageId::TypeScript:
      lang.line_markers = {"//"};
      lang.block_delimiters = {c_block};
      lang.string_rules = {quote("\""), quote("'"), quote("`", true)};
      break;
    case LanguageId::Php:
      lang.line_markers = {"//", "#"};
      lang.block_delimiters = {c_block};
      lang.string_rules = {quote("\"", true), quote("'", true)};
      break;
    case LanguageId::Python:
      lang.line_markers = {"#"};
      lang.string_rules = {quote("\"\"\"", true), quote("'''", true), quote("\""), quote("'")};
      break;
    case LanguageId::Perl:
      lang.line_markers = {"#"};
      lang.string_rules = {quote("\"", true), quote("'", true)};
      lang.pod_blocks = true;
      break;
    case LanguageId::Fortran:
      lang.line_markers = {"!"};
      lang.string_rules = {fortran_quote("\""), fortran_quote("'")};
      lang.fixed_form = fixed_form;
      break;
  }
  return lang;
}

std::span<const ExtensionMapping> extension_table() noexcept { return kExtensions; }

std::optional<SourceLanguage> detect_language(const std::filesystem::path& file_path) {
  std::string ext = file_path.extension().string();
  if (ext.empty()) return std::nullopt;
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& mapping : kExtensions) {
    if (mapping.extension == ext) return source_language(mapping.language, mapping.fixed_form);
  }
  return std::nullopt;
}

}  // namespace satd
