// Copyright 2026 The dcloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
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

namespace dcloss {

/// Failure categories. The numeric values are mirrored by the C API status
/// codes in dcloss.h and must stay in sync with them.
enum class ErrorCode : int {
  invalid_argument = 1,
  dimension_mismatch = 2,
  non_finite = 3,
  no_valid_pixels = 4,
  io = 5,
  bad_magic = 6,
  truncated = 7,
  bad_dimensions = 8,
  bad_header = 9,
  unsupported_format = 10,
  diverged = 11,
  config = 12,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcloss
