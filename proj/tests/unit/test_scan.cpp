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

#include <filesystem>
#include <map>

#include <sys/stat.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "satd/error.hpp"
#include "satd/scan.hpp"

using satd::testing::TempDir;
using satd::testing::fixture_path;
using satd::testing::write_file;

TEST(Scan, TinyRepoHandCount) {
  const auto r = satd::scan_repository(fixture_path("tiny-repo"));
  EXPECT_EQ(r.repo, "tiny-repo");
  EXPECT_EQ(r.files_scanned, 3u);
  ASSERT_EQ(r.comments.size(), 7u);
  std::map<std::string, int> per_file;
  for (const auto& c : r.comments) ++per_file[c.file_path];
  EXPECT_EQ(per_file["main.go"], 1);
  EXPECT_EQ(per_file["solver/integrate.py"], 3);
  EXPECT_EQ(per_file["src/grid.c"], 3);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_TRUE(r.complete());
}

TEST(Scan, SingleGoFile) {
  TempDir dir("scan-go");
  write_file(dir.path() / "main.go", "package main\n// hack\n");
  const auto r = satd::scan_repository(dir.path());
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].raw_text, "hack");
}

TEST(Scan, UnsupportedFilesOnly) {
  TempDir dir("scan-png");
  write_file(dir.path() / "logo.png", "\x89PNG // not code");
  const auto r = satd::scan_repository(dir.path());
  EXPECT_TRUE(r.comments.empty());
  EXPECT_EQ(r.files_scanned, 0u);
}

TEST(Scan, SkipsVcsAndVendoredDirectories) {
  TempDir dir("scan-skip");
  write_file(dir.path() / "a.c", "// keep\n");
  write_file(dir.path() / ".git" / "hooks" / "x.py", "# skip\n");
  write_file(dir.path() / "third_party" / "lib.c", "// skip\n");
  write_file(dir.path() / "web" / "node_modules" / "m.ts", "// skip\n");
  write_file(dir.path() / "gen" / "out.py", "# skip by glob\n");
  satd::ScanConfig config;
  config.ignore_globs = {"gen/*"};
  const auto r = satd::scan_repository(dir.path(), config);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].file_path, "a.c");
}

TEST(Scan, LanguageFilter) {
  satd::ScanConfig config;
  config.languages = std::set<satd::LanguageId>{satd::LanguageId::Go};
  const auto r = satd::scan_repository(fixture_path("tiny-repo"), config);
  ASSERT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.comments[0].file_path, "main.go");
}

TEST(Scan, MissingRootIsFatal) {
  try {
    satd::scan_repository("/nonexistent/satd/root");
    FAIL();
  } catch (const satd::Error& e) {
    EXPECT_EQ(e.code(), satd::ErrorCode::Io);
  }
}

TEST(Scan, UnreadableFileIsADiagnostic) {
  if (::geteuid() == 0) GTEST_SKIP() << "root ignores file permissions";
  TempDir dir("scan-perm");
  write_file(dir.path() / "a.c", "// a\n");
  write_file(dir.path() / "b.c", "// b\n");
  ::chmod((dir.path() / "b.c").c_str(), 0);
  const auto r = satd::scan_repository(dir.path());
  EXPECT_EQ(r.comments.size(), 1u);
  EXPECT_EQ(r.files_failed, 1u);
  EXPECT_FALSE(r.complete());
}

TEST(Scan, UnreadableEntryViaDanglingSymlink) {
  TempDir dir("scan-link");
  write_file(dir.path() / "a.c", "// a\n");
  std::filesystem::create_symlink(dir.path() / "missing.c", dir.path() / "b.c");
  const auto r = satd::scan_repository(dir.path());
  EXPECT_EQ(r.comments.size(), 1u);
  EXPECT_FALSE(r.complete());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, satd::ErrorCode::Io);
}

TEST(Scan, SerialAndParallelKernelsAgree) {
  satd::ScanConfig config;
  const auto files = satd::list_source_files(fixture_path("golden"), config);
  ASSERT_GE(files.size(), 27u);
  const auto serial = satd::kernels::lex_files_serial(files, "golden");
  for (int jobs : {1, 2, 4}) {
    const auto parallel = satd::kernels::lex_files_parallel(files, "golden", jobs);
    EXPECT_EQ(parallel.comments, serial.comments) << jobs;
    EXPECT_EQ(parallel.files_scanned, serial.files_scanned);
  }
}

TEST(Scan, RepeatedScansAreIdentical) {
  const auto a = satd::scan_repository(fixture_path("golden"));
  const auto b = satd::scan_repository(fixture_path("golden"));
  EXPECT_EQ(a.comments, b.comments);
}
