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

#include <string>

#include "constants/lebesgue.hpp"
#include "fields/grid_field.hpp"

namespace nsreg {

/// ||u||_{L^p} of a sampled field, |u| the pointwise Euclidean magnitude.
struct NormReport {
  LebesgueExponent p = LebesgueExponent::any(2.0);
  double value = 0.0;
  std::string quadrature;
  std::string tail_note;

  Json to_json() const;
};

/// Riemann sum (sum |u|^p h^3)^(1/p), or the sample maximum for p = inf.
double lp_norm_value(const GridField& field, LebesgueExponent p);
NormReport lp_norm(const GridField& field, LebesgueExponent p);

/// log Q^p_q = 2p/(p-3) log a + 2q/(3-q) log b; -inf when either norm is 0.
double log_q_pair(double norm_p, double norm_q, LebesgueExponent p, LebesgueExponent q);
double q_pair(const GridField& field, LebesgueExponent p, LebesgueExponent q);

}  // namespace nsreg
