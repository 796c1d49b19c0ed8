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

#include "entropylab/serialization.hpp"

#include <fstream>
#include <sstream>

namespace entropylab {
namespace {

[[noreturn]] void parse_error(const std::string& context, const std::string& what) {
  raise(ErrorKind::Parse, context + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& context) {
  if (!j.is_object()) parse_error(context, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(context, std::string("missing field \"") + key + "\"");
  return *it;
}

Index count_field(const Json& j, const char* key, const std::string& context) {
  const Json& v = field(j, key, context);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    parse_error(context, std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

double number(const Json& v, const std::string& context) {
  if (!v.is_number()) parse_error(context, "expected a number");
  return v.get<double>();
}

template <typename T, typename Reader>
std::vector<T> read_list(const Json& j, const char* key, const std::string& context, Reader read) {
  const Json& list = field(j, key, context);
  if (!list.is_array() || list.empty()) {
    parse_error(context, std::string("\"") + key + "\" must be a non-empty array of matrices");
  }
  std::vector<T> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(read(list[i], context + "." + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// Wraps library errors raised while validating a parsed value with the
/// location it came from.
template <typename F>
auto with_context(const std::string& context, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(e.kind(), context + ": " + e.detail());
  }
}

bool identity_flag(const Json& j, const std::string& context) {
  auto it = j.find("sum_is_identity");
  if (it == j.end()) return false;
  if (!it->is_boolean()) parse_error(context, "\"sum_is_identity\" must be a boolean");
  return it->get<bool>();
}

}  // namespace

Json to_json(const DenseMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const ComplexMatrix& m) { return to_json(m.dense()); }
Json to_json(const HermitianMatrix& m) { return to_json(m.dense()); }
Json to_json(const PositiveDefiniteMatrix& m) { return to_json(m.dense()); }

Json to_json(const ContractionTuple& h) {
  Json list = Json::array();
  for (const auto& b : h.blocks()) list.push_back(to_json(b));
  return list;
}

Json to_json(const MultiInstance& inst) {
  Json a = Json::array();
  for (const auto& x : inst.A) a.push_back(to_json(x));
  return Json{{"L", to_json(inst.L)},
              {"H", to_json(inst.H)},
              {"A", std::move(a)},
              {"sum_is_identity", inst.H.sum_is_identity()}};
}

Json to_json(const ExponentInstance& inst) {
  Json b = Json::array();
  for (const auto& x : inst.B) b.push_back(to_json(x));
  return Json{{"L", to_json(inst.L)},
              {"H", to_json(inst.H)},
              {"B", std::move(b)},
              {"sum_is_identity", inst.H.sum_is_identity()}};
}

DenseMatrix dense_from_json(const Json& j, const std::string& context) {
  const Index rows = count_field(j, "rows", context);
  const Index cols = count_field(j, "cols", context);
  const Json& data = field(j, "data", context);
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    std::ostringstream os;
    os << "\"data\" must hold rows*cols = " << rows * cols << " entries";
    parse_error(context, os.str());
  }
  DenseMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) {
      const Json& e = data[static_cast<std::size_t>(i * cols + c)];
      const std::string where = context + ".data[" + std::to_string(i * cols + c) + "]";
      if (!e.is_array() || e.size() != 2) parse_error(where, "entry must be [re, im]");
      m(i, c) = Complex(number(e[0], where), number(e[1], where));
    }
  }
  return m;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& context) {
  return with_context(context, [&] { return ComplexMatrix(dense_from_json(j, context)); });
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& context) {
  return with_context(context, [&] { return HermitianMatrix(dense_from_json(j, context)); });
}

PositiveDefiniteMatrix pd_from_json(const Json& j, const std::string& context) {
  return with_context(context, [&] { return PositiveDefiniteMatrix(hermitian_from_json(j, context)); });
}

ContractionTuple contraction_from_json(const Json& h, bool sum_is_identity,
                                       const std::string& context) {
  std::vector<ComplexMatrix> blocks;
  if (h.is_object()) {
    blocks.push_back(matrix_from_json(h, context));
  } else if (h.is_array() && !h.empty()) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      blocks.push_back(matrix_from_json(h[i], context + "[" + std::to_string(i) + "]"));
    }
  } else {
    parse_error(context, "expected a matrix or a non-empty array of matrices");
  }
  return with_context(context,
                      [&] { return ContractionTuple(std::move(blocks), sum_is_identity); });
}

MultiInstance multi_instance_from_json(const Json& j, const std::string& context) {
  MultiInstance inst{hermitian_from_json(field(j, "L", context), context + ".L"),
                     contraction_from_json(field(j, "H", context), identity_flag(j, context),
                                           context + ".H"),
                     read_list<PositiveDefiniteMatrix>(j, "A", context, pd_from_json)};
  with_context(context, [&] { validate(inst); });
  return inst;
}

ExponentInstance exponent_instance_from_json(const Json& j, const std::string& context) {
  ExponentInstance inst{hermitian_from_json(field(j, "L", context), context + ".L"),
                        contraction_from_json(field(j, "H", context), identity_flag(j, context),
                                              context + ".H"),
                        read_list<HermitianMatrix>(j, "B", context, hermitian_from_json)};
  with_context(context, [&] { validate(inst); });
  return inst;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Parse, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::Parse, path.string() + ": cannot open file for writing");
  out << j.dump(2) << '\n';
}

}  // namespace entropylab
