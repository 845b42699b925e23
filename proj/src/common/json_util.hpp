/*
  Copyright 2026 The nsreg Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace nsreg {

using Json = nlohmann::json;

/// Library version embedded in every emitted document.
std::string tool_version();

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// JSON number that survives infinities: +inf/-inf/nan become strings.
Json json_number(double v);
double number_from_json(const Json& j);

/// Current UTC time in ISO-8601 form (seconds resolution).
std::string utc_timestamp();

}  // namespace nsreg
