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

#include <stdexcept>
#include <string>
#include <string_view>

namespace satd {

enum class ErrorCode {
  InvalidArgument,
  Io,
  UnterminatedBlockComment,
  UnterminatedString,
  EmptyCorpus,
  MalformedRow,
  UnknownLabel,
  MissingColumn,
  TooFewExamples,
  TooFewGroups,
  ProviderUnavailable,
  ProviderRejectedText,
  MissingLabelInTrain,
  DegenerateData,
  GradientMismatch,
  BackendFailure,
  Unreachable,
  LabelContractViolation,
  MalformedResponse,
  LengthMismatch,
  Empty,
  EmptyMatrix,
  IncompleteReport,
  DivisionByZero,
  MissingField,
  MalformedModel,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every failure the library reports is a satd::Error carrying a stable code;
// callers branch on code(), humans read what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace satd
