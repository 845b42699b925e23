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

#include <optional>

#include "constants/lebesgue.hpp"
#include "constants/riesz_constant.hpp"

// Existence-time markers and envelopes of the alternative theorem. Every
// formula shares the factor A(p) = 8 p C_3(p,p/2) (1 + 3 C_inf^((2p-4)/p)) / (p-3)
// and is evaluated in the log domain.

namespace nsreg {

/// T_l = (A ||u0||_p)^(-2p/(p-3)); nullopt ("vacuous") for zero data.
std::optional<double> t_lower(LebesgueExponent p, double norm_p, const ConstantsContext& ctx);
/// T_r = (A C_0(p,q) ||u0||_q)^(2q/(3-q)); nullopt for zero data.
std::optional<double> t_upper(LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx);
double log_t_lower(LebesgueExponent p, double norm_p, const ConstantsContext& ctx);
double log_t_upper(LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx);

/// Both markers for one (p, q) with the inputs needed to recompute them.
struct TimeBracket {
  LebesgueExponent p = LebesgueExponent::infinity();
  LebesgueExponent q = LebesgueExponent::any(1.0);
  double norm_p = 0.0, norm_q = 0.0;
  double c_infty = 0.0, c3_half = 0.0, c0 = 0.0;
  std::optional<double> t_l, t_r;

  static TimeBracket make(LebesgueExponent p, LebesgueExponent q, double norm_p, double norm_q,
                          const ConstantsContext& ctx);
  /// Recomputes t_l, t_r from the stored inputs only.
  bool reproduces() const;
  Json to_json() const;
};

/// Bound on ||u(t)||_p for t > T_r. Domain error for t <= T_r.
double decay_envelope(double t, LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx);

/// C_b = (p-3) / (8 p C_3 (1 + 3 C_inf^((2p-4)/p))) = 1/A.
double blowup_constant(LebesgueExponent p, const ConstantsContext& ctx);
/// C_b / (t_max - t)^((p-3)/(2p)) for 0 <= t < t_max.
double blowup_floor(double t, LebesgueExponent p, double t_max, const ConstantsContext& ctx);

/// Contraction horizon T_0 = (A ||u0||_p / theta)^(-2p/(p-3)), theta in (0,1).
std::optional<double> picard_horizon(LebesgueExponent p, double norm_p, double theta, const ConstantsContext& ctx);

}  // namespace nsreg
