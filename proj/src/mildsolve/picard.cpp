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

#include "mildsolve/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "certify/horizons.hpp"
#include "common/error.hpp"
#include "fields/norms.hpp"
#include "mildsolve/duhamel.hpp"

namespace nsreg {

namespace {
// Updates below this fraction of ||u0|| are rounding noise; their ratios say nothing.
constexpr double kNoiseFloor = 1e-10;
}  // namespace

Json PicardConfig::to_json() const {
  return Json{{"theta", theta},         {"intervals", intervals},          {"dealias", dealias},
              {"tolerance", tolerance}, {"max_iterations", max_iterations}, {"persistence", persistence},
              {"horizon", horizon ? Json(*horizon) : Json(nullptr)}};
}

PicardConfig PicardConfig::from_json(const Json& j) {
  PicardConfig c;
  c.theta = j.value("theta", c.theta);
  c.intervals = j.value("intervals", c.intervals);
  c.dealias = j.value("dealias", c.dealias);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.persistence = j.value("persistence", c.persistence);
  if (j.contains("horizon") && !j.at("horizon").is_null()) c.horizon = j.at("horizon").get<double>();
  require(c.theta > 0.0 && c.theta < 1.0, ErrorCode::InvalidConfig, "theta must lie in (0, 1)");
  require(c.intervals >= 1, ErrorCode::InvalidConfig, "Picard needs at least one time interval");
  require(c.tolerance > 0.0, ErrorCode::InvalidConfig, "Picard tolerance must be positive");
  require(c.max_iterations >= 1, ErrorCode::InvalidConfig, "max_iterations must be >= 1");
  require(!c.horizon || *c.horizon > 0.0, ErrorCode::InvalidConfig, "horizon must be positive");
  return c;
}

double PicardResult::max_ratio() const {
  return contraction_ratios.empty() ? 0.0 : *std::max_element(contraction_ratios.begin(), contraction_ratios.end());
}

bool PicardResult::in_ball(double slack) const {
  return std::all_of(ball_max.begin(), ball_max.end(), [&](double v) { return v <= 2.0 * norm_u0 + slack; });
}

Json PicardResult::to_json() const {
  return Json{{"status", status},
              {"horizon", horizon},
              {"theta", theta},
              {"p", p.to_json()},
              {"norm_u0", norm_u0},
              {"iterates", iterates},
              {"updates", updates},
              {"contraction_ratios", contraction_ratios},
              {"max_ratio", max_ratio()},
              {"ball_max", ball_max},
              {"ball_bound", 2.0 * norm_u0},
              {"in_ball", in_ball()},
              {"residual", residual},
              {"times", times},
              {"fixed_point_norms", fixed_point_norms},
              {"fixed_point_l2", fixed_point_l2},
              {"diagnostics", diagnostics}};
}

PicardResult picard_solve(const GridField& u0, LebesgueExponent p, const PicardConfig& cfg,
                          const ConstantsContext& ctx) {
  require(u0.solenoidal, ErrorCode::InvalidConfig, "Picard iteration needs divergence-free initial data");
  require(p.reciprocal() < 1.0 / 3.0, ErrorCode::Domain, "Picard iteration needs p in (3, inf]");
  PicardResult res;
  res.p = p;
  res.theta = cfg.theta;
  res.norm_u0 = lp_norm_value(u0, p);
  const auto t0 = cfg.horizon ? cfg.horizon : picard_horizon(p, res.norm_u0, cfg.theta, ctx);
  if (!t0) {
    res.status = "zero-data";
    res.iterates = 1;
    res.horizon = 0.0;
    res.times = {0.0};
    res.fixed_point = {u0};
    res.fixed_point_norms = {0.0};
    res.fixed_point_l2 = {0.0};
    res.ball_max = {0.0};
    res.updates = {0.0};
    return res;
  }
  res.horizon = *t0;

  const int m = cfg.intervals;
  const double dt = res.horizon / m;
  QuadraticTerm quad(u0.grid, cfg.dealias);
  const Wavenumbers& w = quad.wavenumbers();
  const Spectrum3 u0_hat = to_spectrum(u0);

  // Linear part G(t_i) u0, which is also the starting iterate.
  std::vector<Spectrum3> linear(m + 1, u0_hat);
  for (int i = 0; i <= m; ++i) {
    res.times.push_back(i * dt);
    heat_multiply(w, i * dt, linear[i]);
  }
  std::vector<Spectrum3> current = linear;
  std::vector<Spectrum3> next(m + 1);
  GridField scratch = u0;

  auto norm_of = [&](const Spectrum3& s) {
    from_spectrum(s, scratch);
    return lp_norm_value(scratch, p);
  };
  double ball = 0.0;
  for (const auto& s : current) ball = std::max(ball, norm_of(s));
  res.ball_max.push_back(ball);

  Spectrum3 b = zero_spectrum(w), diff = zero_spectrum(w);
  int above = 0;
  res.status = "max-iterations";
  for (int it = 0; it < cfg.max_iterations; ++it) {
    DuhamelIntegrator duhamel(w, dt);
    double update = 0.0;
    ball = 0.0;
    for (int i = 0; i <= m; ++i) {
      quad.evaluate(current[i], b);
      duhamel.push(b);
      next[i] = linear[i];
      for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < b[c].size(); ++s) {
          next[i][c][s] -= duhamel.integral()[c][s];
          diff[c][s] = next[i][c][s] - current[i][c][s];
        }
      update = std::max(update, norm_of(diff));
      ball = std::max(ball, norm_of(next[i]));
    }
    current.swap(next);
    res.iterates = it + 1;
    res.ball_max.push_back(ball);
    if (!res.updates.empty() && res.updates.back() > kNoiseFloor * res.norm_u0) {
      const double ratio = update / res.updates.back();
      res.contraction_ratios.push_back(ratio);
      above = ratio > cfg.theta + 0.1 ? above + 1 : 0;
    }
    res.updates.push_back(update);
    res.residual = update;
    if (update < cfg.tolerance * res.norm_u0) {
      res.status = "converged";
      break;
    }
    if (above >= cfg.persistence) {
      std::ostringstream os;
      os << "contraction ratio above theta + 0.1 for " << above
         << " consecutive iterations; the time or space discretization is too coarse or the data too large";
      res.diagnostics = os.str();
      res.status = "ratio-exceeded";
      break;
    }
  }

  for (const auto& s : current) {
    GridField f = spectrum_to_field(u0.grid, s);
    f.recipe = Json{{"derived_from", u0.recipe}, {"op", "picard"}};
    f.solenoidal = true;
    f.periodic = u0.periodic;
    res.fixed_point_norms.push_back(lp_norm_value(f, p));
    res.fixed_point_l2.push_back(lp_norm_value(f, LebesgueExponent::any(2.0)));
    res.fixed_point.push_back(std::move(f));
  }
  return res;
}

}  // namespace nsreg
