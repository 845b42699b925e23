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
#include <string>
#include <vector>

#include "constants/lebesgue.hpp"
#include "constants/riesz_constant.hpp"
#include "fields/grid_field.hpp"

namespace nsreg {

struct PicardConfig {
  double theta = 2.0 / 3.0;
  /// Time intervals on [0, T_0].
  int intervals = 16;
  double dealias = 2.0 / 3.0;
  /// Stop once sup_t ||u^(n+1) - u^(n)||_p < tolerance * ||u0||_p.
  double tolerance = 1e-12;
  int max_iterations = 60;
  /// Abort after this many consecutive ratios above theta + 0.1.
  int persistence = 3;
  /// Horizon override; by default T_0 from the contraction estimate.
  std::optional<double> horizon;

  Json to_json() const;
  static PicardConfig from_json(const Json& j);
};

struct PicardResult {
  std::string status;  // converged | ratio-exceeded | max-iterations | zero-data
  double horizon = 0.0;
  double theta = 0.0;
  LebesgueExponent p = LebesgueExponent::infinity();
  double norm_u0 = 0.0;
  int iterates = 0;
  std::vector<double> updates;             // sup_t ||u^(n+1) - u^(n)||_p
  std::vector<double> contraction_ratios;  // updates[n] / updates[n-1], above the noise floor
  std::vector<double> ball_max;            // max_t ||u^(n)(t)||_p per iterate
  double residual = 0.0;
  std::vector<double> times;
  std::vector<double> fixed_point_norms;   // ||u(t_i)||_p of the final iterate
  std::vector<double> fixed_point_l2;
  std::vector<GridField> fixed_point;      // u at every time node
  std::string diagnostics;

  double max_ratio() const;
  bool in_ball(double slack = 1e-9) const;
  Json to_json() const;
};

/// Iterates u <- M u from u^(0)(t) = G(t) u0 on [0, T_0] with
/// T_0 = (A ||u0||_p / theta)^(-2p/(p-3)).
PicardResult picard_solve(const GridField& u0, LebesgueExponent p, const PicardConfig& cfg,
                          const ConstantsContext& ctx);

}  // namespace nsreg
