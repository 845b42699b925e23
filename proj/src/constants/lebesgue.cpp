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

#include "constants/lebesgue.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "common/error.hpp"

namespace nsreg {

namespace {
std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  // Shortest of 15 or 17 digits that reads back exactly.
  for (int digits : {15, 17}) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    if (digits == 17 || std::stod(os.str()) == v) return os.str();
  }
  return {};
}
}  // namespace

LebesgueExponent LebesgueExponent::any(double value) {
  require(!std::isnan(value) && value >= 1.0, ErrorCode::Domain,
          "Lebesgue exponent must lie in [1, inf], got " + fmt(value));
  return LebesgueExponent(value, Role::Any);
}

LebesgueExponent LebesgueExponent::p_role(double value) {
  require(!std::isnan(value) && value > 3.0, ErrorCode::Domain,
          "exponent p must lie in (3, inf], got " + fmt(value));
  return LebesgueExponent(value, Role::P);
}

LebesgueExponent LebesgueExponent::q_role(double value) {
  require(!std::isnan(value) && value >= 1.0 && value < 3.0, ErrorCode::Domain,
          "exponent q must lie in [1, 3), got " + fmt(value));
  return LebesgueExponent(value, Role::Q);
}

LebesgueExponent LebesgueExponent::conjugate() const {
  if (is_infinite()) return LebesgueExponent(1.0, Role::Any);
  if (value_ == 1.0) return infinity();
  return LebesgueExponent(value_ / (value_ - 1.0), Role::Any);
}

double LebesgueExponent::pair_weight_p() const {
  require(reciprocal() < 1.0 / 3.0, ErrorCode::Domain, "2p/(p-3) needs p > 3");
  return 2.0 / (1.0 - 3.0 * reciprocal());
}

double LebesgueExponent::pair_weight_q() const {
  require(!is_infinite() && value_ < 3.0, ErrorCode::Domain, "2q/(3-q) needs q < 3");
  return 2.0 * value_ / (3.0 - value_);
}

double LebesgueExponent::blowup_rate() const { return 0.5 * (1.0 - 3.0 * reciprocal()); }

std::string LebesgueExponent::to_string() const { return fmt(value_); }

Json LebesgueExponent::to_json() const { return json_number(value_); }

LebesgueExponent LebesgueExponent::from_json(const Json& j, Role role) {
  const double v = number_from_json(j);
  switch (role) {
    case Role::P: return p_role(v);
    case Role::Q: return q_role(v);
    case Role::Any: break;
  }
  return any(v);
}

}  // namespace nsreg
