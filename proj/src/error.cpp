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

#include "sevdel/error.hpp"

namespace sevdel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidElement: return "invalid-element";
    case ErrorCode::kUnknownDomain: return "unknown-domain";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyFile: return "empty-file";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kCountOutOfRange: return "count-out-of-range";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kMalformedProof: return "malformed-proof";
    case ErrorCode::kMissingBlock: return "missing-block";
    case ErrorCode::kDlogOutOfRange: return "dlog-out-of-range";
    case ErrorCode::kEnclaveDestroyed: return "enclave-destroyed";
    case ErrorCode::kDuplicateEnclave: return "duplicate-enclave";
    case ErrorCode::kAlreadyDestroyed: return "already-destroyed";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kUnknownFile: return "unknown-file";
    case ErrorCode::kInsufficientBalance: return "insufficient-balance";
    case ErrorCode::kDeadlinePassed: return "deadline-passed";
    case ErrorCode::kWrongState: return "wrong-state";
    case ErrorCode::kWrongWindow: return "wrong-window";
    case ErrorCode::kInvalidStake: return "invalid-stake";
    case ErrorCode::kDuplicateOwner: return "duplicate-owner";
    case ErrorCode::kUnknownOwner: return "unknown-owner";
    case ErrorCode::kDuplicateTags: return "duplicate-tags";
    case ErrorCode::kClockRegression: return "clock-regression";
    case ErrorCode::kScenarioInvalid: return "scenario-invalid";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kUnauthorized: return "unauthorized";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace sevdel
