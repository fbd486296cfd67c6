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

#include "infer_bench/zoo/spec_io.h"

#include <fstream>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/json_fields.h"
#include "infer_bench/zoo/architectures.h"

namespace infer_bench {

using nlohmann::json;

namespace {

using json_fields::As;
using json_fields::Field;
using json_fields::ParseError;

int PositiveInt(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_number_integer() || v.get<int64_t>() < 1 ||
      v.get<int64_t>() > (1 << 20)) {
    ParseError(key, fmt::format("field '{}' must be a positive integer", key));
  }
  return v.get<int>();
}

std::pair<int, int> Pair(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer() || v[0].get<int64_t>() < 1 ||
      v[1].get<int64_t>() < 1 || v[0].get<int64_t>() > (1 << 20) ||
      v[1].get<int64_t>() > (1 << 20)) {
    ParseError(key,
               fmt::format("field '{}' must be two positive integers", key));
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

template <typename E>
E ParseEnum(const json& j, const char* key, std::initializer_list<E> values,
            std::string (*name)(E)) {
  const std::string s = As<std::string>(j, key);
  for (E e : values) {
    if (name(e) == s) return e;
  }
  ParseError(key, fmt::format("field '{}' has unknown value '{}'", key, s));
}

bool HasWeights(OpKind k) {
  return k == OpKind::kConv2D || k == OpKind::kDepthwiseConv2D ||
         k == OpKind::kFullyConnected;
}

}  // namespace

json NodeToJson(const OperatorNode& node) {
  const NodeAttrs& a = node.attrs;
  json j;
  j["id"] = node.id;
  j["op"] = std::string(OpKindName(node.kind));
  j["inputs"] = node.inputs;
  switch (node.kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2D:
      j["kernel"] = {a.kernel_h, a.kernel_w};
      if (node.kind == OpKind::kConv2D) j["out_channels"] = a.out_channels;
      j["stride"] = {a.stride_h, a.stride_w};
      j["padding"] = PaddingName(a.padding);
      j["activation"] = ActivationName(a.activation);
      break;
    case OpKind::kFullyConnected:
      j["out_channels"] = a.out_channels;
      j["activation"] = ActivationName(a.activation);
      break;
    case OpKind::kPool:
      j["pool"] = PoolKindName(a.pool_kind);
      j["window"] = {a.window_h, a.window_w};
      j["stride"] = {a.stride_h, a.stride_w};
      j["padding"] = PaddingName(a.padding);
      break;
    case OpKind::kResizeBilinear:
      j["size"] = {a.out_h, a.out_w};
      break;
    default:
      break;
  }
  if (a.out_qp) {
    j["out_qp"] = {{"scale", a.out_qp->scale},
                   {"zero_point", a.out_qp->zero_point}};
  }
  if (!node.weight_refs.empty()) j["weights"] = node.weight_refs;
  return j;
}

OperatorNode NodeFromJson(const json& j) {
  if (!j.is_object()) ParseError("layers", "layer entries must be objects");
  OperatorNode n;
  n.id = As<std::string>(j, "id");
  try {
    n.kind = ParseOpKind(As<std::string>(j, "op"));
  } catch (const BenchError& e) {
    ParseError("op", e.what());
  }
  n.inputs = As<std::vector<std::string>>(j, "inputs");
  NodeAttrs& a = n.attrs;
  const auto paddings = {Padding::kSame, Padding::kValid};
  const auto acts = {Activation::kNone, Activation::kRelu};
  switch (n.kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2D:
      std::tie(a.kernel_h, a.kernel_w) = Pair(j, "kernel");
      if (n.kind == OpKind::kConv2D) {
        a.out_channels = PositiveInt(j, "out_channels");
      }
      std::tie(a.stride_h, a.stride_w) = Pair(j, "stride");
      a.padding = ParseEnum<Padding>(j, "padding", paddings, PaddingName);
      a.activation =
          ParseEnum<Activation>(j, "activation", acts, ActivationName);
      break;
    case OpKind::kFullyConnected:
      a.out_channels = PositiveInt(j, "out_channels");
      a.activation =
          ParseEnum<Activation>(j, "activation", acts, ActivationName);
      break;
    case OpKind::kPool:
      a.pool_kind = ParseEnum<PoolKind>(j, "pool",
                                        {PoolKind::kMax, PoolKind::kAvg},
                                        PoolKindName);
      std::tie(a.window_h, a.window_w) = Pair(j, "window");
      std::tie(a.stride_h, a.stride_w) = Pair(j, "stride");
      a.padding = ParseEnum<Padding>(j, "padding", paddings, PaddingName);
      break;
    case OpKind::kResizeBilinear:
      std::tie(a.out_h, a.out_w) = Pair(j, "size");
      break;
    default:
      break;
  }
  if (j.contains("out_qp")) {
    const json& q = j.at("out_qp");
    a.out_qp = QuantParams{As<float>(q, "scale"), As<int32_t>(q, "zero_point")};
  }
  if (HasWeights(n.kind)) {
    n.weight_refs = As<std::vector<std::string>>(j, "weights");
  }
  return n;
}

json SpecToJson(const WorkloadSpec& spec) {
  json j;
  j["test_id"] = spec.test_id;
  j["name"] = spec.name;
  j["architecture"] = spec.architecture;
  j["input_resolution"] = {spec.input_h, spec.input_w};
  j["quantized"] = spec.quantized;
  j["accelerator_eligible"] = spec.accelerator_eligible;
  j["time_budget_s"] =
      spec.time_budget_s ? json(*spec.time_budget_s) : json(nullptr);
  j["scale"] = spec.scale;
  j["seed"] = spec.seed;
  json layers = json::array();
  for (const OperatorNode& n : spec.layers) layers.push_back(NodeToJson(n));
  j["layers"] = std::move(layers);
  return j;
}

WorkloadSpec SpecFromJson(const json& j) {
  if (!j.is_object()) ParseError("spec", "workload spec must be an object");
  WorkloadSpec s;
  s.test_id = As<int>(j, "test_id");
  s.name = As<std::string>(j, "name");
  s.architecture = As<std::string>(j, "architecture");
  std::tie(s.input_h, s.input_w) = Pair(j, "input_resolution");
  s.quantized = As<bool>(j, "quantized");
  s.accelerator_eligible = As<bool>(j, "accelerator_eligible");
  const json& budget = Field(j, "time_budget_s");
  if (!budget.is_null()) {
    if (!budget.is_number()) {
      ParseError("time_budget_s", "time_budget_s must be a number or null");
    }
    s.time_budget_s = budget.get<double>();
  }
  s.scale = As<double>(j, "scale");
  const json& seed = Field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() &&
                                      seed.get<int64_t>() >= 0)) {
    ParseError("seed", "seed must be a non-negative integer");
  }
  s.seed = seed.get<uint64_t>();
  if (j.contains("layers")) {
    const json& layers = j.at("layers");
    if (!layers.is_array()) ParseError("layers", "layers must be an array");
    for (const json& l : layers) s.layers.push_back(NodeFromJson(l));
  }
  if (s.test_id < 1 || s.test_id > kNumTests) {
    throw BenchError(ErrorKind::kInvariantViolation, "test_id",
                     fmt::format("test_id must be 1..{}, got {}", kNumTests,
                                 s.test_id));
  }
  ValidateWorkloadSpec(s);
  return s;
}

void SaveSpec(const WorkloadSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw BenchError(ErrorKind::kIo, path,
                     fmt::format("cannot open '{}' for writing", path));
  }
  out << SpecToJson(spec).dump(2) << "\n";
  if (!out) {
    throw BenchError(ErrorKind::kIo, path,
                     fmt::format("failed writing '{}'", path));
  }
}

WorkloadSpec LoadSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw BenchError(ErrorKind::kIo, path,
                     fmt::format("cannot open '{}'", path));
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw BenchError(ErrorKind::kParse, path,
                     fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
  return SpecFromJson(j);
}

WorkloadSpec WithLayers(WorkloadSpec spec) {
  spec.layers = BuildArchitecture(spec.architecture, spec.input_h,
                                  spec.input_w, spec.seed, false)
                    .nodes;
  return spec;
}

}  // namespace infer_bench
