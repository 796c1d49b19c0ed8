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

#include "entropylab/errors.hpp"

namespace entropylab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotAContraction: return "NotAContraction";
    case ErrorKind::Convergence: return "ConvergenceFailure";
    case ErrorKind::NumericalInconsistency: return "NumericalInconsistency";
    case ErrorKind::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorKind::Parse: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

bool Error::is_numerical() const noexcept {
  return kind_ == ErrorKind::Convergence || kind_ == ErrorKind::NumericalInconsistency ||
         kind_ == ErrorKind::NonFiniteObjective;
}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace entropylab
