// Copyright 2026 The ncdyn Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncdyn {

enum class ErrorCode {
  Empty,
  NeighborRepeat,
  LengthMismatch,
  ShapeMismatch,
  NotContractive,
  NotUnital,
  AsymmetryTooLarge,
  HeightZero,
  GramClipTooLarge,
  OutOfTruncation,
  CornerDegenerate,
  Parse,
  Config,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this type; code() lets callers
// (the CLI in particular) dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::NeighborRepeat: return "NeighborRepeat";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::HeightZero: return "HeightZero";
    case ErrorCode::GramClipTooLarge: return "GramClipTooLarge";
    case ErrorCode::OutOfTruncation: return "OutOfTruncation";
    case ErrorCode::CornerDegenerate: return "CornerDegenerate";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace ncdyn
