// Copyright 2026 The nsumbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSUMBOX_JSON_IO_HPP_
#define NSUMBOX_JSON_IO_HPP_

#include <optional>

#include "json.hpp"
#include "nsumbox/apps.hpp"

namespace nsumbox {

using Json = nlohmann::json;

// Loaders throw Error(InvalidSpec) on missing or mistyped keys.

Json field_to_json(const Field &field);
/// "modulus" is optional; when present it must be monic and irreducible.
Field field_from_json(const Json &j);

/// Standalone matrices carry their field; matrices nested in a spec do not.
Json matrix_to_json(const MatrixFq &m, bool with_field = true);
MatrixFq matrix_from_json(const Json &j, const std::optional<Field> &field = std::nullopt);

Json spec_to_json(const SumBoxSpec &spec);
/// Rebuilds the box from (g, h) and rejects a stored m that disagrees.
SumBoxSpec spec_from_json(const Json &j);

Json qcsa_params_to_json(const QcsaParams &params);
/// "u" defaults to all ones.
QcsaParams qcsa_params_from_json(const Json &j);
Json qcsa_box_to_json(const QcsaBox &box);

Json pir_params_to_json(const PirParams &params);
PirParams pir_params_from_json(const Json &j);
Json sdbmm_params_to_json(const SdbmmParams &params);
SdbmmParams sdbmm_params_from_json(const Json &j);

Json report_to_json(const DemoReport &report, const Json &params);

}  // namespace nsumbox

#endif  // NSUMBOX_JSON_IO_HPP_
