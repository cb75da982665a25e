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

#include "fgbg/error.h"

namespace fgbg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidShape: return "InvalidShape";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kDtypeUnsupported: return "DtypeUnsupported";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kDecodeFailure: return "DecodeFailure";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kManifestInvalid: return "ManifestInvalid";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kEmptyForeground: return "EmptyForeground";
    case ErrorCode::kEmptyBackground: return "EmptyBackground";
    case ErrorCode::kMissingBackgroundTag: return "MissingBackgroundTag";
    case ErrorCode::kEmptyState: return "EmptyState";
    case ErrorCode::kUnknownImage: return "UnknownImage";
    case ErrorCode::kCandidatesMissing: return "CandidatesMissing";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
  }
  return "Unknown";
}

}  // namespace fgbg
