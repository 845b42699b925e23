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

#include "certify/horizons.hpp"

#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "constants/closed_form.hpp"

namespace nsreg {

namespace cf = constants;

namespace {

void require_p(LebesgueExponent p) {
  require(p.reciprocal() < 1.0 / 3.0, ErrorCode::Domain, "p must lie in (3, inf]");
}
void require_q(LebesgueExponent q) {
  require(!q.is_infinite() && q.value() >= 1.0 && q.value() < 3.0, ErrorCode::Domain, "q must lie in [1, 3)");
}
void require_norm(double v) {
  require(std::isfinite(v) && v >= 0.0, ErrorCode::Domain, "norm must be finite and nonnegative");
}

double log_a(LebesgueExponent p, double c_infty) { return cf::log_quadratic_factor(p, c_infty); }

}  // namespace

double log_t_lower(LebesgueExponent p, double norm_p, const ConstantsContext& ctx) {
  require_p(p);
  require_norm(norm_p);
  require(norm_p > 0.0, ErrorCode::Domain, "T_l is vacuous for zero data");
  return -p.pair_weight_p() * (log_a(p, ctx.c_infty()) + std::log(norm_p));
}

double log_t_upper(LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx) {
  require_p(p);
  require_q(q);
  require_norm(norm_q);
  require(norm_q > 0.0, ErrorCode::Domain, "T_r is vacuous for zero data");
  return q.pair_weight_q() * (log_a(p, ctx.c_infty()) + cf::log_c0(p, q) + std::log(norm_q));
}

std::optional<double> t_lower(LebesgueExponent p, double norm_p, const ConstantsContext& ctx) {
  require_p(p);
  require_norm(norm_p);
  if (norm_p == 0.0) return std::nullopt;
  return std::exp(log_t_lower(p, norm_p, ctx));
}

std::optional<double> t_upper(LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx) {
  require_p(p);
  require_q(q);
  require_norm(norm_q);
  if (norm_q == 0.0) return std::nullopt;
  return std::exp(log_t_upper(p, q, norm_q, ctx));
}

TimeBracket TimeBracket::make(LebesgueExponent p, LebesgueExponent q, double norm_p, double norm_q,
                              const ConstantsContext& ctx) {
  TimeBracket b;
  b.p = p;
  b.q = q;
  b.norm_p = norm_p;
  b.norm_q = norm_q;
  b.c_infty = ctx.c_infty();
  b.c3_half = std::exp(cf::log_c3_half(p));
  b.c0 = cf::c0(p, q);
  b.t_l = t_lower(p, norm_p, ctx);
  b.t_r = t_upper(p, q, norm_q, ctx);
  return b;
}

bool TimeBracket::reproduces() const {
  // Rebuild from the stored constants, not from the closed-form evaluators.
  const double a = 8.0 * c3_half * (1.0 + 3.0 * cf::riesz_power(p, c_infty)) / (1.0 - 3.0 * p.reciprocal());
  auto same = [](std::optional<double> x, std::optional<double> y) {
    if (!x || !y) return !x && !y;
    return std::abs(*x - *y) <= 1e-12 * std::abs(*y);
  };
  const std::optional<double> tl =
      norm_p > 0.0 ? std::optional(std::pow(a * norm_p, -p.pair_weight_p())) : std::nullopt;
  const std::optional<double> tr =
      norm_q > 0.0 ? std::optional(std::pow(a * c0 * norm_q, q.pair_weight_q())) : std::nullopt;
  return same(tl, t_l) && same(tr, t_r);
}

Json TimeBracket::to_json() const {
  auto opt = [](std::optional<double> v) { return v ? json_number(*v) : Json("vacuous"); };
  return Json{{"p", p.to_json()},     {"q", q.to_json()},       {"norm_p", norm_p},   {"norm_q", norm_q},
              {"c_infty", c_infty},   {"c3_half", c3_half},     {"c0", c0},           {"t_l", opt(t_l)},
              {"t_r", opt(t_r)}};
}

double decay_envelope(double t, LebesgueExponent p, LebesgueExponent q, double norm_q, const ConstantsContext& ctx) {
  require_p(p);
  require_q(q);
  require_norm(norm_q);
  require(std::isfinite(t) && t > 0.0, ErrorCode::Domain, "envelope time must be positive");
  if (norm_q == 0.0) return 0.0;
  const double tr = std::exp(log_t_upper(p, q, norm_q, ctx));
  if (!(t > tr)) {
    std::ostringstream os;
    os.precision(17);
    os << "decay envelope is defined only for t > T_r = " << tr << ", got t = " << t;
    fail(ErrorCode::Domain, os.str());
  }
  const double la = log_a(p, ctx.c_infty());
  // x = A C_0 ||u0||_q t^(-(3-q)/(2q)) = (T_r / t)^((3-q)/(2q)) < 1 for t > T_r.
  const double x = std::exp(la + cf::log_c0(p, q) + std::log(norm_q) - (3.0 - q.value()) / (2.0 * q.value()) * std::log(t));
  require(x <= 1.0, ErrorCode::InvariantViolation, "decay envelope radicand is negative above T_r");
  // 1 - sqrt(1 - x) rewritten without cancellation.
  const double numerator = x / (1.0 + std::sqrt(1.0 - x));
  return numerator / (0.5 * std::exp(la) * std::pow(t, p.blowup_rate()));
}

double blowup_constant(LebesgueExponent p, const ConstantsContext& ctx) {
  require_p(p);
  return std::exp(-log_a(p, ctx.c_infty()));
}

double blowup_floor(double t, LebesgueExponent p, double t_max, const ConstantsContext& ctx) {
  require(std::isfinite(t_max) && t_max > 0.0, ErrorCode::Domain, "t_max must be positive and finite");
  require(t >= 0.0 && t < t_max, ErrorCode::Domain, "blow-up floor needs 0 <= t < t_max");
  return blowup_constant(p, ctx) * std::pow(t_max - t, -p.blowup_rate());
}

std::optional<double> picard_horizon(LebesgueExponent p, double norm_p, double theta, const ConstantsContext& ctx) {
  require_p(p);
  require_norm(norm_p);
  require(theta > 0.0 && theta < 1.0, ErrorCode::Domain, "theta must lie in (0, 1)");
  if (norm_p == 0.0) return std::nullopt;
  return std::exp(-p.pair_weight_p() * (log_a(p, ctx.c_infty()) + std::log(norm_p) - std::log(theta)));
}

}  // namespace nsreg
