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

#include "cli_runner.hpp"

#include <sys/wait.h>

#include <cstdlib>

#include "fixtures.hpp"

namespace satd::testing {

namespace {

std::string quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

CliResult run_cli(const std::string& binary, const std::vector<std::string>& args) {
  TempDir capture("cli");
  const auto out_path = capture.path() / "stdout";
  const auto err_path = capture.path() / "stderr";
  std::string command = quote(binary);
  for (const auto& a : args) command += " " + quote(a);
  command += " >" + quote(out_path.string()) + " 2>" + quote(err_path.string()) + " </dev/null";
  const int status = std::system(command.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}

void write_dataset_csv(const std::filesystem::path& path, const std::vector<LabeledExample>& examples) {
  std::string text = "project,text,label\n";
  for (const auto& e : examples) text += e.project + ",\"" + e.text + "\"," + std::string(wire_name(e.label)) + "\n";
  write_file(path, text);
}

}  // namespace satd::testing
