// Copyright 2026 The qlat authors
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

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qlat/circuit.hpp"

namespace qlat {

/// Interchange codec. UTF-8 JSON, strict: unknown fields are rejected with
/// the path to the offending field. The one optional extension key is a
/// top-level "restriction_report" object, which is carried through opaquely.
nlohmann::json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

struct CircuitFile {
  Circuit circuit;
  std::optional<nlohmann::json> restriction_report;
};

void save_circuit(const std::string &path, const Circuit &c,
                  const nlohmann::json *restriction_report = nullptr);
CircuitFile load_circuit(const std::string &path);

}  // namespace qlat
