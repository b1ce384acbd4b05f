// Copyright 2026 The nsumbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsumbox/error.hpp"

namespace nsumbox {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNonPrime: return "NonPrime";
        case ErrorCode::kDegreeZero: return "DegreeZero";
        case ErrorCode::kFieldTooLarge: return "FieldTooLarge";
        case ErrorCode::kFieldMismatch: return "FieldMismatch";
        case ErrorCode::kDivisionByZero: return "DivisionByZero";
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kOddLength: return "OddLength";
        case ErrorCode::kDimMismatch: return "DimMismatch";
        case ErrorCode::kSingular: return "Singular";
        case ErrorCode::kNotAPermutation: return "NotAPermutation";
        case ErrorCode::kNotSymplectic: return "NotSymplectic";
        case ErrorCode::kBadShape: return "BadShape";
        case ErrorCode::kNotSelfOrthogonal: return "NotSelfOrthogonal";
        case ErrorCode::kRankDeficient: return "RankDeficient";
        case ErrorCode::kNotSSO: return "NotSSO";
        case ErrorCode::kAlgorithmFailure: return "AlgorithmFailure";
        case ErrorCode::kNotALit: return "NotALit";
        case ErrorCode::kBadCompletion: return "BadCompletion";
        case ErrorCode::kNotRealizable: return "NotRealizable";
        case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::kTooLarge: return "TooLarge";
        case ErrorCode::kNotDeterministic: return "NotDeterministic";
        case ErrorCode::kNumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorCode::kBadIndexSet: return "BadIndexSet";
        case ErrorCode::kInvalidSpec: return "InvalidSpec";
        case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
        case ErrorCode::kZeroMultiplier: return "ZeroMultiplier";
        case ErrorCode::kInvalidParams: return "InvalidParams";
        case ErrorCode::kLTooLarge: return "LTooLarge";
        case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
        case ErrorCode::kBadRound: return "BadRound";
        case ErrorCode::kDecodeMismatch: return "DecodeMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {
}

}  // namespace nsumbox
