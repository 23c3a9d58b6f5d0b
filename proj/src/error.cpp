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

#include "satd/error.hpp"

namespace satd {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::UnterminatedBlockComment: return "UnterminatedBlockComment";
    case ErrorCode::UnterminatedString: return "UnterminatedString";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::TooFewExamples: return "TooFewExamples";
    case ErrorCode::TooFewGroups: return "TooFewGroups";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::ProviderRejectedText: return "ProviderRejectedText";
    case ErrorCode::MissingLabelInTrain: return "MissingLabelInTrain";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::GradientMismatch: return "GradientMismatch";
    case ErrorCode::BackendFailure: return "BackendFailure";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::LabelContractViolation: return "LabelContractViolation";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::IncompleteReport: return "IncompleteReport";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::MalformedModel: return "MalformedModel";
  }
  return "Unknown";
}

}  // namespace satd
