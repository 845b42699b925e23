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

#include <limits>
#include <string>

#include "common/json_util.hpp"

namespace nsreg {

/// A Lebesgue exponent in [1, infinity]. The two factories p_role/q_role
/// enforce the ranges the regularity criteria need: p in (3, inf], q in [1, 3).
///
/// Every derived quantity is written in terms of the reciprocal 1/p, which is
/// exactly zero at p = inf, so the infinite endpoint takes the analytic limit
/// instead of feeding a huge float into a rational expression.
class LebesgueExponent {
 public:
  enum class Role { Any, P, Q };

  static LebesgueExponent any(double value);
  static LebesgueExponent p_role(double value);
  static LebesgueExponent q_role(double value);
  static LebesgueExponent infinity() { return LebesgueExponent(kInf, Role::Any); }

  double value() const { return value_; }
  bool is_infinite() const { return value_ == kInf; }
  Role role() const { return role_; }

  /// 1/p, zero at infinity.
  double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }
  /// Hoelder conjugate p' with 1/p + 1/p' = 1.
  LebesgueExponent conjugate() const;

  /// 2p/(p-3); tends to 2 as p -> inf.
  double pair_weight_p() const;
  /// 2q/(3-q).
  double pair_weight_q() const;
  /// (p-3)/(2p); tends to 1/2 as p -> inf.
  double blowup_rate() const;

  std::string to_string() const;
  Json to_json() const;
  static LebesgueExponent from_json(const Json& j, Role role = Role::Any);

  friend bool operator==(const LebesgueExponent& a, const LebesgueExponent& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const LebesgueExponent& a, const LebesgueExponent& b) {
    return a.value_ < b.value_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  LebesgueExponent(double v, Role r) : value_(v), role_(r) {}

  double value_;
  Role role_;
};

}  // namespace nsreg
