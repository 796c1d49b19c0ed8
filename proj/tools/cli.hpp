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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace entropylab::cli {

enum ExitCode : int {
  kOk = 0,
  kViolations = 1,
  kUsage = 2,
  kNumerical = 3,
};

/// Runs the command line in-process. Reads "-" instance files from `in`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::istream& in);

/// Seed used when --seed is absent: ENTROPYLAB_SEED if set, else 0xC0FFEE.
std::uint64_t default_seed();

/// Parses decimal or 0x-prefixed hexadecimal.
std::optional<std::uint64_t> parse_seed(const std::string& text);

/// Fixed-point rendering with 15 digits after the decimal point.
std::string format_value(double value);

}  // namespace entropylab::cli
