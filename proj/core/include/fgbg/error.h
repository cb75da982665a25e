// Copyright 2026 The fgbg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FGBG_ERROR_H_
#define FGBG_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgbg {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidShape,
  kShapeMismatch,
  kBadMagic,
  kDtypeUnsupported,
  kTruncatedPayload,
  kNonFiniteValue,
  kIoFailure,
  kDecodeFailure,
  kLabelOutOfRange,
  kManifestInvalid,
  kInvalidTarget,
  kEmptySet,
  kEmptyForeground,
  kEmptyBackground,
  kMissingBackgroundTag,
  kEmptyState,
  kUnknownImage,
  kCandidatesMissing,
  kIndexOutOfRange,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable failures in the library are reported with this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fgbg

#endif  // FGBG_ERROR_H_
