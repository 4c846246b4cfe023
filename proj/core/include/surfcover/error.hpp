// Copyright 2026 The SurfCover Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace surfcover {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kEmptyMesh,
  kTooManyClusters,
  kDisconnected,
  kDisconnectedGraph,
  kIncompleteGraph,
  kMissingEdgePath,
  kInfeasiblePacking,
  kEmptyLayer,
  kSchemaMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyMesh: return "EmptyMesh";
    case ErrorCode::kTooManyClusters: return "TooManyClusters";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kIncompleteGraph: return "IncompleteGraph";
    case ErrorCode::kMissingEdgePath: return "MissingEdgePath";
    case ErrorCode::kInfeasiblePacking: return "InfeasiblePacking";
    case ErrorCode::kEmptyLayer: return "EmptyLayer";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
  }
  return "Unknown";
}

}  // namespace surfcover
