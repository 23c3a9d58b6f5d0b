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

#include <algorithm>
#include <cctype>
#include <optional>

#include <json.hpp>

#include "satd/comments.hpp"
#include "satd/unicode.hpp"

namespace satd {

namespace {

constexpr std::string_view kFixedFormMarker = "column-1";
constexpr std::string_view kPodMarker = "=pod";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v' || c == '\r'; }

bool is_ident(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool blank(std::string_view s) { return std::all_of(s.begin(), s.end(), is_space); }

std::string_view strip_leading(std::string_view s, char c) {
  while (!s.empty() && s.front() == c) s.remove_prefix(1);
  return s;
}

std::string_view strip_trailing(std::string_view s, char c) {
  while (!s.empty() && s.back() == c) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    begin = end + 1;
  }
  return lines;
}

struct Piece {
  CommentKind kind = CommentKind::Line;
  std::string marker;
  bool own_line = false;
  std::size_t line_start = 0;  // 1-based
  std::size_t line_end = 0;
  std::vector<std::string> texts;
};

struct CloseSearch {
  std::size_t end = std::string_view::npos;  // index one past the closing quote
  bool escaped_newline = false;              // line ended with a lone backslash
};

CloseSearch find_string_close(std::string_view line, std::size_t from, const QuoteRule& rule) {
  CloseSearch result;
  std::size_t k = from;
  while (k < line.size()) {
    if (rule.backslash_escapes && line[k] == '\\') {
      if (k + 1 >= line.size()) {
        result.escaped_newline = true;
        return result;
      }
      k += 2;
      continue;
    }
    if (line.compare(k, rule.close.size(), rule.close) == 0) {
      if (rule.doubled_escapes &&
          line.compare(k + rule.close.size(), rule.close.size(), rule.close) == 0) {
        k += 2 * rule.close.size();
        continue;
      }
      result.end = k + rule.close.size();
      return result;
    }
    ++k;
  }
  return result;
}

class Lexer {
 public:
  Lexer(const SourceLanguage& language, std::string_view path)
      : lang_(language), path_(path), c_style_blocks_(!language.block_delimiters.empty()) {}

  void run(const std::vector<std::string_view>& lines) {
    const std::size_t n = lines.size();
    std::size_t i = 0;
    while (true) {
      for (; i < n; ++i) lex_line(lines[i], i);
      if (state_ == State::String) {
        diagnose(ErrorCode::UnterminatedString, string_line_ + 1,
                 "string literal opened here is never closed; resuming on the next line");
        state_ = State::Code;
        i = string_line_ + 1;
        continue;
      }
      break;
    }
    if (state_ == State::Block) {
      diagnose(ErrorCode::UnterminatedBlockComment, open_.line_start,
               "block comment is not closed before end of file");
      finish_open(n);
    } else if (state_ == State::Pod) {
      finish_open(n);
    }
  }

  std::vector<Piece> pieces;
  std::vector<Diagnostic> diagnostics;

 private:
  enum class State { Code, Block, Pod, String };

  void diagnose(ErrorCode code, std::size_t line, std::string message) {
    diagnostics.push_back(Diagnostic{code, std::string(path_), line, std::move(message)});
  }

  // Every piece of a C-style block loses its '*' decoration.
  std::string block_text(std::string_view s, bool last) const {
    s = trim(s);
    if (c_style_blocks_) {
      s = trim(strip_leading(s, '*'));
      if (last) s = trim(strip_trailing(s, '*'));
    }
    return std::string(s);
  }

  static std::string pod_text(std::string_view line) {
    if (line.size() >= 2 && line[0] == '=' && std::isalpha(static_cast<unsigned char>(line[1]))) {
      const std::size_t space = line.find_first_of(" \t");
      return space == std::string_view::npos ? std::string() : std::string(trim(line.substr(space)));
    }
    return std::string(trim(line));
  }

  static bool is_pod_cut(std::string_view line) {
    return line.substr(0, 4) == "=cut" && (line.size() == 4 || is_space(line[4]));
  }

  void finish_open(std::size_t line_end) {
    open_.line_end = line_end;
    pieces.push_back(std::move(open_));
    open_ = Piece{};
    state_ = State::Code;
  }

  void lex_line(std::string_view line, std::size_t index) {
    const std::size_t lineno = index + 1;
    std::size_t pos = 0;
    switch (state_) {
      case State::Block: {
        const std::size_t end = line.find(block_close_);
        if (end == std::string_view::npos) {
          open_.texts.push_back(block_text(line, false));
          return;
        }
        open_.texts.push_back(block_text(line.substr(0, end), true));
        finish_open(lineno);
        pos = end + block_close_.size();
        break;
      }
      case State::Pod:
        if (is_pod_cut(line)) {
          finish_open(lineno);
        } else {
          open_.texts.push_back(pod_text(line));
        }
        return;
      case State::String: {
        const CloseSearch close = find_string_close(line, 0, string_rule_);
        if (close.end == std::string_view::npos) return;
        pos = close.end;
        state_ = State::Code;
        break;
      }
      case State::Code:
        if (lang_.fixed_form && !line.empty() &&
            (line[0] == 'C' || line[0] == 'c' || line[0] == '*' || line[0] == '!')) {
          std::string_view text = line.substr(1);
          if (line[0] == '*' || line[0] == '!') text = strip_leading(text, line[0]);
          pieces.push_back(Piece{CommentKind::Line, std::string(kFixedFormMarker), true, lineno,
                                 lineno, {std::string(trim(text))}});
          return;
        }
        if (lang_.pod_blocks && line.size() >= 2 && line[0] == '=' &&
            std::isalpha(static_cast<unsigned char>(line[1]))) {
          open_ = Piece{CommentKind::Block, std::string(kPodMarker), true, lineno, lineno, {}};
          open_.texts.push_back(pod_text(line));
          state_ = State::Pod;
          return;
        }
        break;
    }
    scan_code(line, lineno, pos);
  }

  const BlockDelimiter* match_block(std::string_view line, std::size_t pos) const {
    for (const auto& block : lang_.block_delimiters) {
      if (line.compare(pos, block.open.size(), block.open) == 0) return &block;
    }
    return nullptr;
  }

  const std::string* match_line_marker(std::string_view line, std::size_t pos) const {
    for (const auto& marker : lang_.line_markers) {
      if (line.compare(pos, marker.size(), marker) != 0) continue;
      if (marker == "#") {
        // $#array is Perl's last-index operator; #[...] is a PHP attribute.
        if (lang_.id == LanguageId::Perl && pos > 0 && line[pos - 1] == '$') continue;
        if (lang_.id == LanguageId::Php && pos + 1 < line.size() && line[pos + 1] == '[') continue;
      }
      return &marker;
    }
    return nullptr;
  }

  // C/C++ digit separators (1'000'000) are not character literals.
  bool is_digit_separator(std::string_view line, std::size_t pos) const {
    if (lang_.id != LanguageId::C && lang_.id != LanguageId::Cpp) return false;
    std::size_t k = pos;
    while (k > 0 && (is_ident(line[k - 1]) || line[k - 1] == '\'' || line[k - 1] == '.')) --k;
    return k < pos && std::isdigit(static_cast<unsigned char>(line[k])) != 0;
  }

  // R"delim( ... )delim" with an optional encoding prefix.
  std::optional<QuoteRule> match_raw_string(std::string_view line, std::size_t pos) const {
    if (lang_.id != LanguageId::Cpp || line[pos] != '"' || pos == 0 || line[pos - 1] != 'R') {
      return std::nullopt;
    }
    std::size_t k = pos - 1;
    while (k > 0 && is_ident(line[k - 1])) --k;
    const std::string_view prefix = line.substr(k, pos - k);
    if (prefix != "R" && prefix != "u8R" && prefix != "uR" && prefix != "UR" && prefix != "LR") {
      return std::nullopt;
    }
    const std::size_t paren = line.find('(', pos + 1);
    if (paren == std::string_view::npos || paren - pos - 1 > 16) return std::nullopt;
    const std::string_view delim = line.substr(pos + 1, paren - pos - 1);
    if (delim.find_first_of(" \\)\t") != std::string_view::npos) return std::nullopt;
    QuoteRule rule;
    rule.open = std::string(line.substr(pos, paren - pos + 1));
    rule.close = ")" + std::string(delim) + "\"";
    rule.multiline = true;
    rule.backslash_escapes = false;
    return rule;
  }

  void scan_code(std::string_view line, std::size_t lineno, std::size_t pos) {
    while (pos < line.size()) {
      if (const auto* block = match_block(line, pos)) {
        const std::size_t body = pos + block->open.size();
        open_ = Piece{CommentKind::Block, block->open, blank(line.substr(0, pos)), lineno, lineno, {}};
        block_close_ = block->close;
        const std::size_t end = line.find(block->close, body);
        if (end == std::string_view::npos) {
          open_.texts.push_back(block_text(line.substr(body), false));
          state_ = State::Block;
          return;
        }
        open_.texts.push_back(block_text(line.substr(body, end - body), true));
        finish_open(lineno);
        pos = end + block->close.size();
        continue;
      }
      if (const auto* marker = match_line_marker(line, pos)) {
        std::string_view text = line.substr(pos + marker->size());
        if (std::all_of(marker->begin(), marker->end(), [&](char c) { return c == marker->back(); })) {
          text = strip_leading(text, marker->back());
        }
        pieces.push_back(Piece{CommentKind::Line, *marker, blank(line.substr(0, pos)), lineno, lineno,
                               {std::string(trim(text))}});
        return;
      }
      if (line[pos] == '\'' && is_digit_separator(line, pos)) {
        ++pos;
        continue;
      }
      std::optional<QuoteRule> raw = match_raw_string(line, pos);
      const QuoteRule* rule = raw ? &*raw : nullptr;
      if (rule == nullptr) {
        for (const auto& candidate : lang_.string_rules) {
          if (line.compare(pos, candidate.open.size(), candidate.open) == 0) {
            rule = &candidate;
            break;
          }
        }
      }
      if (rule != nullptr) {
        const CloseSearch close = find_string_close(line, pos + rule->open.size(), *rule);
        if (close.end != std::string_view::npos) {
          pos = close.end;
          continue;
        }
        if (rule->multiline || close.escaped_newline) {
          string_rule_ = *rule;
          string_line_ = lineno - 1;
          state_ = State::String;
          return;
        }
        diagnose(ErrorCode::UnterminatedString, lineno,
                 "string literal is not closed on its line; resuming on the next line");
        return;
      }
      ++pos;
    }
  }

  const SourceLanguage& lang_;
  std::string_view path_;
  bool c_style_blocks_;
  State state_ = State::Code;
  Piece open_;
  std::string block_close_;
  QuoteRule string_rule_;
  std::size_t string_line_ = 0;  // 0-based line of the open multi-line string
};

bool mergeable(const Piece& group, const Piece& next) {
  return next.kind == CommentKind::Line && next.own_line && group.own_line &&
         group.kind != CommentKind::Block && group.marker == next.marker &&
         next.line_start == group.line_end + 1;
}

std::vector<Piece> assemble(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (auto& piece : pieces) {
    if (!out.empty() && piece.line_start == out.back().line_end) {
      Piece& prev = out.back();
      prev.line_end = std::max(prev.line_end, piece.line_end);
      if (piece.kind == CommentKind::Block) prev.kind = CommentKind::Block;
      prev.own_line = false;
      for (auto& t : piece.texts) prev.texts.push_back(std::move(t));
      continue;
    }
    if (!out.empty() && mergeable(out.back(), piece)) {
      Piece& prev = out.back();
      prev.kind = CommentKind::MergedLineGroup;
      prev.line_end = piece.line_end;
      for (auto& t : piece.texts) prev.texts.push_back(std::move(t));
      continue;
    }
    out.push_back(std::move(piece));
  }
  return out;
}

std::string join_texts(const std::vector<std::string>& texts) {
  std::string joined;
  for (const auto& t : texts) {
    if (t.empty()) continue;
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  return joined;
}

}  // namespace

std::string_view comment_kind_name(CommentKind kind) noexcept {
  switch (kind) {
    case CommentKind::Line: return "line";
    case CommentKind::Block: return "block";
    case CommentKind::MergedLineGroup: return "merged_line_group";
  }
  return "line";
}

ExtractResult extract_comments(std::string_view file_text, const SourceLanguage& language,
                               std::string_view file_path, std::string_view repo) {
  const std::string text = unicode::sanitize_utf8(file_text);
  Lexer lexer(language, file_path);
  lexer.run(split_lines(text));

  ExtractResult result;
  result.diagnostics = std::move(lexer.diagnostics);
  for (auto& piece : assemble(std::move(lexer.pieces))) {
    SourceComment comment;
    comment.repo = std::string(repo);
    comment.file_path = std::string(file_path);
    comment.line_start = piece.line_start;
    comment.line_end = piece.line_end;
    comment.language = language.id;
    comment.kind = piece.kind;
    comment.raw_text = join_texts(piece.texts);
    result.comments.push_back(std::move(comment));
  }
  return result;
}

std::string to_jsonl(const SourceComment& comment) {
  nlohmann::ordered_json j;
  j["repo"] = comment.repo;
  j["file"] = comment.file_path;
  j["line_start"] = comment.line_start;
  j["line_end"] = comment.line_end;
  j["language"] = language_name(comment.language);
  j["kind"] = comment_kind_name(comment.kind);
  j["raw_text"] = comment.raw_text;
  return j.dump();
}

}  // namespace satd
