/* Copyright 2026 The entropylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropylab {

/// Failure categories surfaced by the library. The CLI maps these onto exit
/// codes, so the set is closed.
enum class ErrorKind {
  Dimension,
  Domain,
  NotAContraction,
  Convergence,
  NumericalInconsistency,
  NonFiniteObjective,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for all library errors; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the "<Kind>: " prefix carried by what().
  const std::string& detail() const noexcept { return detail_; }

  /// True for failures caused by floating point breakdown rather than bad
  /// input.
  bool is_numerical() const noexcept;

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace entropylab
