/*
 * Copyright 2026 The sevdel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEVDEL_ERROR_HPP_
#define SEVDEL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sevdel {

enum class ErrorCode {
  kInvalidElement,
  kUnknownDomain,
  kInvalidArgument,
  kEmptyFile,
  kDimensionMismatch,
  kCountOutOfRange,
  kIndexOutOfRange,
  kMalformedProof,
  kMissingBlock,
  kDlogOutOfRange,
  kEnclaveDestroyed,
  kDuplicateEnclave,
  kAlreadyDestroyed,
  kNotFound,
  kUnknownFile,
  kUnauthorized,
  kInsufficientBalance,
  kDeadlinePassed,
  kWrongState,
  kWrongWindow,
  kInvalidStake,
  kDuplicateOwner,
  kUnknownOwner,
  kDuplicateTags,
  kClockRegression,
  kScenarioInvalid,
  kFormat,
  kIo,
};

// Stable kebab-case name, used in transcripts and scenario expectations.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sevdel

#endif  // SEVDEL_ERROR_HPP_
