// Copyright 2026 The classassign Authors
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

namespace classassign {

enum class ErrorKind {
  kInvalidArgument,
  kInvalidInstance,
  kInfeasible,
  kOverflow,
  kCapacityMismatch,
  kUndefined,
  kTooLarge,
  kParse,
  kIo,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kInvalidInstance: return "invalid instance";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kCapacityMismatch: return "capacity mismatch";
    case ErrorKind::kUndefined: return "undefined";
    case ErrorKind::kTooLarge: return "too large";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown";
}

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace classassign
