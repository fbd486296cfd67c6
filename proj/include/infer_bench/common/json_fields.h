// Copyright 2026 The InferBench Authors.
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

#ifndef INFER_BENCH_COMMON_JSON_FIELDS_H_
#define INFER_BENCH_COMMON_JSON_FIELDS_H_

#include <string>

#include <fmt/format.h>

#include "json.hpp"

#include "infer_bench/common/error.h"

// Typed field access for JSON inputs. Failures throw kParse with the field
// name as subject.
namespace infer_bench::json_fields {

[[noreturn]] inline void ParseError(const std::string& field,
                                    const std::string& msg) {
  throw BenchError(ErrorKind::kParse, field, msg);
}

inline const nlohmann::json& Field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    ParseError(key, fmt::format("missing field '{}'", key));
  }
  return j.at(key);
}

template <typename T>
T As(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = Field(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    ParseError(key, fmt::format("field '{}' has the wrong type: {}", key,
                                e.what()));
  }
}

inline double Number(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = Field(j, key);
  if (!v.is_number()) {
    ParseError(key, fmt::format("field '{}' must be a number", key));
  }
  return v.get<double>();
}

inline std::string NonEmptyString(const nlohmann::json& j, const char* key) {
  const std::string s = As<std::string>(j, key);
  if (s.empty()) ParseError(key, fmt::format("field '{}' is empty", key));
  return s;
}

}  // namespace infer_bench::json_fields

#endif  // INFER_BENCH_COMMON_JSON_FIELDS_H_
