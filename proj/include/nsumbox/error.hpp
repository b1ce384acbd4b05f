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

#ifndef NSUMBOX_ERROR_HPP_
#define NSUMBOX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nsumbox {

enum class ErrorCode {
    kNonPrime,
    kDegreeZero,
    kFieldTooLarge,
    kFieldMismatch,
    kDivisionByZero,
    kLengthMismatch,
    kOddLength,
    kDimMismatch,
    kSingular,
    kNotAPermutation,
    kNotSymplectic,
    kBadShape,
    kNotSelfOrthogonal,
    kRankDeficient,
    kNotSSO,
    kAlgorithmFailure,
    kNotALit,
    kBadCompletion,
    kNotRealizable,
    kIndexOutOfRange,
    kTooLarge,
    kNotDeterministic,
    kNumericalDegeneracy,
    kBadIndexSet,
    kInvalidSpec,
    kDuplicatePoints,
    kZeroMultiplier,
    kInvalidParams,
    kLTooLarge,
    kFieldTooSmall,
    kBadRound,
    kDecodeMismatch,
};

const char *error_code_name(ErrorCode code);

/// The single exception type thrown by the library. `code()` identifies the failed precondition.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace nsumbox

#endif  // NSUMBOX_ERROR_HPP_
