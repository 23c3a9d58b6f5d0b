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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "golden.hpp"
#include "satd/comments.hpp"
#include "satd/error.hpp"
#include "satd/language.hpp"
#include "satd/random.hpp"

using satd::CommentKind;
using satd::LanguageId;

namespace {

satd::ExtractResult lex(const std::string& text, LanguageId id, bool fixed = false) {
  return satd::extract_comments(text, satd::source_language(id, fixed), "f");
}

}  // namespace

TEST(Lexer, PythonMarkerInsideStringAndMergedGroup) {
  const auto r = lex("x = \"# not a comment\"\n# TODO fix\n# later", LanguageId::Python);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].kind, CommentKind::MergedLineGroup);
  EXPECT_EQ(r.comments[0].line_start, 2u);
  EXPECT_EQ(r.comments[0].line_end, 3u);
  EXPECT_EQ(r.comments[0].raw_text, "TODO fix later");
}

TEST(Lexer, CBlockJoinsInteriorLines) {
  const auto r = lex("/* a\n b */", LanguageId::C);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].kind, CommentKind::Block);
  EXPECT_EQ(r.comments[0].line_start, 1u);
  EXPECT_EQ(r.comments[0].line_end, 2u);
  EXPECT_EQ(r.comments[0].raw_text, "a b");
}

TEST(Lexer, EmptyFile) {
  for (LanguageId id : {LanguageId::C, LanguageId::Python, LanguageId::Perl, LanguageId::Fortran}) {
    const auto r = lex("", id);
    EXPECT_TRUE(r.comments.empty());
    EXPECT_TRUE(r.diagnostics.empty());
  }
}

TEST(Lexer, BlankLineBreaksGroup) {
  const auto r = lex("// a\n\n// b\n", LanguageId::Go);
  ASSERT_EQ(r.comments.size(), 2u);
  EXPECT_EQ(r.comments[0].kind, CommentKind::Line);
  EXPECT_EQ(r.comments[1].line_start, 3u);
}

TEST(Lexer, TrailingCommentsDoNotMerge) {
  const auto r = lex("int a; // one\nint b; // two\n", LanguageId::C);
  ASSERT_EQ(r.comments.size(), 2u);
  EXPECT_EQ(r.comments[0].kind, CommentKind::Line);
}

TEST(Lexer, DifferentMarkersDoNotMerge) {
  const auto r = lex("<?php\n# a\n// b\n", LanguageId::Php);
  ASSERT_EQ(r.comments.size(), 2u);
}

TEST(Lexer, UnterminatedBlockIsReportedAndKept) {
  const auto r = lex("int x;\n/* open\nstill\n", LanguageId::Java);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].line_start, 2u);
  EXPECT_EQ(r.comments[0].line_end, 3u);
  EXPECT_EQ(r.comments[0].raw_text, "open still");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, satd::ErrorCode::UnterminatedBlockComment);
  EXPECT_EQ(r.diagnostics[0].line, 2u);
}

TEST(Lexer, UnterminatedStringResumesOnNextLine) {
  const auto r = lex("s = \"oops # hidden\nt = 1 # seen\n", LanguageId::Python);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].raw_text, "seen");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, satd::ErrorCode::UnterminatedString);
  EXPECT_EQ(r.diagnostics[0].line, 1u);
}

TEST(Lexer, UnclosedMultilineStringRewinds) {
  // The triple quote never closes, so lexing restarts after its line.
  const auto r = lex("x = '''open\n# after\n", LanguageId::Python);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].line_start, 2u);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 1u);
}

TEST(Lexer, CrLfLineEndings) {
  const auto r = lex("// a\r\n// b\r\nint x; /* c */\r\n", LanguageId::Cpp);
  ASSERT_EQ(r.comments.size(), 2u);
  EXPECT_EQ(r.comments[0].raw_text, "a b");
  EXPECT_EQ(r.comments[1].raw_text, "c");
}

TEST(Lexer, InvalidUtf8IsReplaced) {
  const auto r = lex("# caf\xE9 au lait\n", LanguageId::Perl);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].raw_text, "caf\xEF\xBF\xBD au lait");
}

TEST(Lexer, FixedFormOnlyInFixedLayout) {
  const std::string src = "C comment\n      X = 1\ncontinue\n";
  EXPECT_EQ(lex(src, LanguageId::Fortran, true).comments.size(), 2u);
  EXPECT_EQ(lex(src, LanguageId::Fortran, false).comments.size(), 0u);
}

TEST(Lexer, PodAtEndOfFileIsClosedSilently) {
  const auto r = lex("=head1 TITLE\n\ntext\n", LanguageId::Perl);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].raw_text, "TITLE text");
  EXPECT_EQ(r.comments[0].line_end, 3u);
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Lexer, MergedGroupsSpanAtLeastTwoLines) {
  const auto r = lex("# a\n# b\n# c\nx = 1\n# d\n", LanguageId::Python);
  ASSERT_EQ(r.comments.size(), 2u);
  EXPECT_EQ(r.comments[0].kind, CommentKind::MergedLineGroup);
  EXPECT_GE(r.comments[0].line_end - r.comments[0].line_start, 1u);
  EXPECT_EQ(r.comments[1].kind, CommentKind::Line);
}

TEST(Lexer, JsonlRecordShape) {
  auto r = satd::extract_comments("// hi \"there\"\n", satd::source_language(LanguageId::Go), "cmd/main.go", "repo");
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(satd::to_jsonl(r.comments[0]),
            R"({"repo":"repo","file":"cmd/main.go","line_start":1,"line_end":1,"language":"go","kind":"line","raw_text":"hi \"there\""})");
}

// Comment markers placed inside a string literal never add comments.
TEST(LexerProperty, StringSafety) {
  const std::vector<std::pair<LanguageId, std::string>> langs = {
      {LanguageId::C, "//"},          {LanguageId::Cpp, "//"},     {LanguageId::Python, "#"},
      {LanguageId::Perl, "#"},        {LanguageId::Fortran, "!"},  {LanguageId::TypeScript, "//"},
      {LanguageId::Go, "//"},         {LanguageId::Php, "#"},      {LanguageId::Java, "//"}};
  satd::Rng rng(11);
  for (const auto& [id, marker] : langs) {
    const auto lang = satd::source_language(id);
    std::vector<std::string> inserts = lang.line_markers;
    for (const auto& b : lang.block_delimiters) {
      inserts.push_back(b.open);
      inserts.push_back(b.close);
    }
    const std::string base_body = "plain text value";
    const auto count = [&](const std::string& body) {
      const std::string src = "  x = \"" + body + "\" " + marker + " tail\n" + marker + " own\n";
      return satd::extract_comments(src, lang, "f").comments.size();
    };
    const std::size_t baseline = count(base_body);
    ASSERT_EQ(baseline, 2u) << lang.name();
    for (const auto& ins : inserts) {
      for (int trial = 0; trial < 20; ++trial) {
        std::string body = base_body;
        body.insert(rng.below(body.size() + 1), ins);
        EXPECT_EQ(count(body), baseline) << lang.name() << " with " << body;
      }
    }
  }
}

// Spans never overlap within one file.
TEST(LexerProperty, NoOverlapAcrossGoldenCorpus) {
  for (const auto& c : satd::testing::golden_cases()) {
    const auto lang = satd::detect_language(c.source);
    const auto r = satd::extract_comments(satd::testing::read_file(c.source), *lang, "f");
    for (std::size_t i = 1; i < r.comments.size(); ++i) {
      EXPECT_GT(r.comments[i].line_start, r.comments[i - 1].line_end) << c.source;
      EXPECT_LE(r.comments[i].line_start, r.comments[i].line_end);
    }
  }
}

// Re-lexing exactly the lines a comment claims reproduces its text. Comments
// whose first line closes a multi-line literal are excluded: a slice cannot
// know it starts inside a string.
TEST(LexerProperty, ProvenanceSoundness) {
  const std::set<std::pair<std::string, std::size_t>> starts_inside_literal = {
      {"raw_strings.cpp", 8}, {"template.ts", 5}, {"TextBlock.java", 5}};
  std::size_t checked = 0;
  for (const auto& c : satd::testing::golden_cases()) {
    const auto lang = satd::detect_language(c.source);
    const std::string text = satd::testing::read_file(c.source);
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    for (const auto& comment : satd::extract_comments(text, *lang, "f").comments) {
      if (starts_inside_literal.count({c.source.filename().string(), comment.line_start})) continue;
      std::string slice;
      for (std::size_t i = comment.line_start; i <= comment.line_end; ++i) slice += lines[i - 1] + "\n";
      const auto again = satd::extract_comments(slice, *lang, "f").comments;
      ASSERT_EQ(again.size(), 1u) << c.source << ":" << comment.line_start;
      EXPECT_EQ(again[0].raw_text, comment.raw_text) << c.source << ":" << comment.line_start;
      ++checked;
    }
  }
  EXPECT_GT(checked, 80u);
}
