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

#include "constants/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "common/error.hpp"

namespace nsreg::constants {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);
const double kLnPi = std::log(kPi);

// 1/q - 1/p, validated for 1 <= q < p <= inf.
double gap(LebesgueExponent p, LebesgueExponent q) {
  require(q.value() >= 1.0, ErrorCode::Domain, "q must be >= 1");
  require(q.value() < p.value(), ErrorCode::Domain,
          "need q < p, got p=" + p.to_string() + " q=" + q.to_string());
  return q.reciprocal() - p.reciprocal();
}

// log C_3 written through d = 1/q - 1/p:
//   C_3 = 2^(-7d/2) e^(-d/2) pi^(-d-1/2).
double log_c3_gap(double d) { return -3.5 * d * kLn2 - 0.5 * d - (d + 0.5) * kLnPi; }

void require_c_infty(double c) {
  require(std::isfinite(c) && c >= 0.0, ErrorCode::Domain, "C_inf must be finite and >= 0");
}

// c^e with the convention 0^0 = 1.
double power(double c, double e) {
  if (e == 0.0) return 1.0;
  return std::pow(c, e);
}

}  // namespace

double log_c0(LebesgueExponent p, LebesgueExponent q) {
  return -1.5 * gap(p, q) * std::log(4.0 * kPi);
}

double c0(LebesgueExponent p, LebesgueExponent q) { return std::exp(log_c0(p, q)); }

double c1(LebesgueExponent p) {
  return std::exp(log_c3_gap(1.0 - p.reciprocal()));
}

double c2(LebesgueExponent p) {
  require(p.value() >= 2.0, ErrorCode::Domain, "C_2 needs p >= 2");
  return std::exp(log_c3_gap(1.0 - 2.0 * p.reciprocal()));
}

double log_c3(LebesgueExponent p, LebesgueExponent q) { return log_c3_gap(gap(p, q)); }

double c3(LebesgueExponent p, LebesgueExponent q) { return std::exp(log_c3(p, q)); }

double log_c3_half(LebesgueExponent p) {
  require(p.value() > 2.0, ErrorCode::Domain, "C_3(p, p/2) needs p > 2");
  // 1/(p/2) - 1/p = 1/p.
  return log_c3_gap(p.reciprocal());
}

double c4(LebesgueExponent p, double c_infty) {
  require_c_infty(c_infty);
  require(p.value() > 1.0, ErrorCode::Domain, "C_4 needs p > 1");
  const double r = p.reciprocal();
  if (p.value() < 2.0) return power(c_infty, 4.0 * r - 2.0);
  return power(c_infty, 2.0 - 4.0 * r);
}

double c5(LebesgueExponent p, LebesgueExponent q, double c_infty) {
  require_c_infty(c_infty);
  require(q.value() > 1.0 && q.value() < p.value(), ErrorCode::Domain, "C_5 needs 1 < q < p");
  if (p.value() < 2.0) return power(c_infty, 4.0 * p.reciprocal() - 2.0);
  if (q.value() < 2.0) return power(c_infty, 2.0 - 4.0 * p.reciprocal());
  return power(c_infty, 2.0 - 4.0 * q.reciprocal());
}

double riesz_power(LebesgueExponent p, double c_infty) {
  require_c_infty(c_infty);
  return power(c_infty, 2.0 - 4.0 * p.reciprocal());
}

double log_quadratic_factor(LebesgueExponent p, double c_infty) {
  require(p.value() > 3.0, ErrorCode::Domain, "need p > 3, got " + p.to_string());
  // 8p/(p-3) = 8/(1 - 3/p).
  const double lead = std::log(8.0 / (1.0 - 3.0 * p.reciprocal()));
  return lead + log_c3_half(p) + std::log1p(3.0 * riesz_power(p, c_infty));
}

double log_k0(LebesgueExponent p, LebesgueExponent q, double c_infty) {
  require(p.value() > 3.0, ErrorCode::Domain, "K_0 needs p > 3");
  require(q.value() >= 1.0 && q.value() < 3.0, ErrorCode::Domain, "K_0 needs q in [1,3)");
  const double wp = p.pair_weight_p();
  const double wq = q.pair_weight_q();
  return (wp + wq) * log_quadratic_factor(p, c_infty) + wq * log_c0(p, q);
}

double log_k0_expanded(LebesgueExponent p, LebesgueExponent q, double c_infty) {
  require(p.value() > 3.0, ErrorCode::Domain, "K_0 needs p > 3");
  require(q.value() >= 1.0 && q.value() < 3.0, ErrorCode::Domain, "K_0 needs q in [1,3)");
  require_c_infty(c_infty);
  const double r = p.reciprocal();
  // p/(p-3) 2^(3 - 7/(2p)) e^(-1/(2p)) pi^(-(p+2)/(2p)) (1 + 3 C^((2p-4)/p))
  const double log_base = -std::log(1.0 - 3.0 * r) + (3.0 - 3.5 * r) * kLn2 - 0.5 * r -
                          (0.5 + r) * kLnPi + std::log1p(3.0 * power(c_infty, 2.0 - 4.0 * r));
  const double outer = p.pair_weight_p() + q.pair_weight_q();
  // (4 pi)^(-3(p-q)/(p(3-q))) = (4 pi)^(-3 (1/q - 1/p) q / (3 - q))
  const double qv = q.value();
  const double tail = -3.0 * (q.reciprocal() - r) * qv / (3.0 - qv) * std::log(4.0 * kPi);
  return outer * log_base + tail;
}

double k0(LebesgueExponent p, LebesgueExponent q, double c_infty) {
  return std::exp(log_k0(p, q, c_infty));
}

double idc3p_threshold(LebesgueExponent p, double c_infty) {
  require(p.value() > 3.0, ErrorCode::Domain, "L^3 threshold needs p > 3, got " + p.to_string());
  const double r = p.reciprocal();
  // e^(1/(2p)) pi^((2p-1)/(2p)) (p-3) / (2^(2-1/(2p)) (1+3C^((2p-4)/p)) p),
  // with (p-3)/p = 1 - 3/p.
  const double log_num = 0.5 * r + (1.0 - 0.5 * r) * kLnPi + std::log(1.0 - 3.0 * r);
  const double log_den = (2.0 - 0.5 * r) * kLn2 + std::log1p(3.0 * riesz_power(p, c_infty));
  return std::exp(log_num - log_den);
}

ThresholdChoice best_idc3p_threshold(std::span<const LebesgueExponent> p_grid, double c_infty) {
  require(!p_grid.empty(), ErrorCode::Domain, "empty p grid");
  ThresholdChoice best{p_grid.front(), idc3p_threshold(p_grid.front(), c_infty)};
  for (const auto& p : p_grid.subspan(1)) {
    const double t = idc3p_threshold(p, c_infty);
    if (t > best.threshold || (t == best.threshold && p < best.p)) best = {p, t};
  }
  return best;
}

}  // namespace nsreg::constants
