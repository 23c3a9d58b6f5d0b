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

#include "satd/error.hpp"
#include "satd/language.hpp"

namespace satd {

enum class CommentKind { Line, Block, MergedLineGroup };

std::string_view comment_kind_name(CommentKind kind) noexcept;

/// A logical comment located in a source file.
///
/// Lines are 1-based and inclusive. `raw_text` has its comment delimiters
/// removed, surrounding whitespace trimmed and, for multi-line comments,
/// the non-empty interior lines joined by single spaces.
struct SourceComment {
  std::string repo;
  std::string file_path;  // repo-relative, '/' separated
  std::size_t line_start = 1;
  std::size_t line_end = 1;
  LanguageId language = LanguageId::C;
  CommentKind kind = CommentKind::Line;
  std::string raw_text;

  bool operator==(const SourceComment&) const = default;
};

struct Diagnostic {
  ErrorCode code;
  std::string file_path;
  std::size_t line = 0;  // 0 when not tied to a line
  std::string message;
};

struct ExtractResult {
  std::vector<SourceComment> comments;
  std::vector<Diagnostic> diagnostics;
};

/// Lexes one file. Comment markers inside string literals are ignored, block
/// comments become one comment each, and maximal runs of own-line comments
/// with the same marker on consecutive lines merge into one MergedLineGroup.
/// A comment beginning on the line where the previous one ended is folded
/// into it, so line spans never overlap.
///
/// Invalid UTF-8 is replaced with U+FFFD before lexing. Never throws on
/// malformed source: unterminated blocks are emitted truncated at end of
/// file and unterminated strings resume lexing on the next line, both with a
/// diagnostic.
ExtractResult extract_comments(std::string_view file_text, const SourceLanguage& language,
                               std::string_view file_path, std::string_view repo = {});

// One JSON object, no trailing newline:
// {"repo","file","line_start","line_end","language","kind","raw_text"}
std::string to_jsonl(const SourceComment& comment);

}  // namespace satd
