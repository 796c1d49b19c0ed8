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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "entropylab/functionals.hpp"
#include "entropylab/matrix.hpp"

namespace entropylab {

using Json = nlohmann::json;

// Matrix files: {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major
// order. Doubles are written with round-trip precision.

Json to_json(const DenseMatrix& m);
Json to_json(const ComplexMatrix& m);
Json to_json(const HermitianMatrix& m);
Json to_json(const PositiveDefiniteMatrix& m);
/// List of block matrices.
Json to_json(const ContractionTuple& h);
/// {"L": matrix, "H": [matrix, ...], "A": [matrix, ...], "sum_is_identity": bool}
Json to_json(const MultiInstance& inst);
/// As MultiInstance with the list stored under "B".
Json to_json(const ExponentInstance& inst);

// Readers validate structure and the mathematical invariants of the target
// type. Structural problems raise Parse; `context` prefixes every message.

DenseMatrix dense_from_json(const Json& j, const std::string& context);
ComplexMatrix matrix_from_json(const Json& j, const std::string& context);
HermitianMatrix hermitian_from_json(const Json& j, const std::string& context);
PositiveDefiniteMatrix pd_from_json(const Json& j, const std::string& context);
ContractionTuple contraction_from_json(const Json& h, bool sum_is_identity,
                                       const std::string& context);
MultiInstance multi_instance_from_json(const Json& j, const std::string& context);
ExponentInstance exponent_instance_from_json(const Json& j, const std::string& context);

/// Parses a JSON file; syntax errors raise Parse with the path and position.
Json load_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void save_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace entropylab
