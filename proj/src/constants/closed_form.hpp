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

#include <span>

#include "constants/lebesgue.hpp"

// Closed-form constants of the heat-semigroup estimates and of the regularity
// criteria. Everything is accumulated in the log domain; the plain-valued
// wrappers exponentiate at the end and may overflow to +inf for extreme q.

namespace nsreg::constants {

/// (4 pi)^(-3(p-q)/(2pq)) for 1 <= q < p <= inf.
double c0(LebesgueExponent p, LebesgueExponent q);
double log_c0(LebesgueExponent p, LebesgueExponent q);

/// L^1 -> L^p constant of the gradient kernel, 1 <= p <= inf.
double c1(LebesgueExponent p);
/// L^p' -> L^p constant of the gradient kernel, 2 <= p <= inf.
double c2(LebesgueExponent p);
/// L^q -> L^p constant of the gradient kernel, 1 <= q < p <= inf.
double c3(LebesgueExponent p, LebesgueExponent q);
double log_c3(LebesgueExponent p, LebesgueExponent q);
/// C_3(p, p/2), continuous up to p = inf where it equals pi^(-1/2).
double log_c3_half(LebesgueExponent p);

/// Riesz power for the L^p -> L^p estimate of G_klj; branches at p = 2.
double c4(LebesgueExponent p, double c_infty);
/// Riesz power for the L^q -> L^p estimate of G_klj, exactly as printed in the
/// lemma: three branches (p < 2), (p >= 2 > q), (q >= 2).
double c5(LebesgueExponent p, LebesgueExponent q, double c_infty);
/// The power C_inf^((2p-4)/p) used by the global criteria for every q.
double riesz_power(LebesgueExponent p, double c_infty);

/// log of 8 p C_3(p,p/2) (1 + 3 C_inf^((2p-4)/p)) / (p-3), the factor shared
/// by T_l, T_r, K_0, T_0 and the decay / blow-up envelopes.
double log_quadratic_factor(LebesgueExponent p, double c_infty);

/// K_0 assembled from C_3 and C_0 (first displayed form).
double log_k0(LebesgueExponent p, LebesgueExponent q, double c_infty);
/// K_0 from the expanded closed form (second displayed form).
double log_k0_expanded(LebesgueExponent p, LebesgueExponent q, double c_infty);
double k0(LebesgueExponent p, LebesgueExponent q, double c_infty);

/// Right-hand side of the L^3 smallness condition; p in (3, inf].
double idc3p_threshold(LebesgueExponent p, double c_infty);

struct ThresholdChoice {
  LebesgueExponent p;
  double threshold;
};
/// The largest threshold over a grid of p (ties resolved toward smaller p).
ThresholdChoice best_idc3p_threshold(std::span<const LebesgueExponent> p_grid, double c_infty);

}  // namespace nsreg::constants
