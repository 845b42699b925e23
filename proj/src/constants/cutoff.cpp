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

#include "constants/cutoff.hpp"

#include <cmath>

#include "common/error.hpp"

namespace nsreg {

namespace {
double bump_piece(double x, double s) { return x > 0.0 ? std::exp(-s / x) : 0.0; }
double bump_piece_derivative(double x, double s) {
  return x > 0.0 ? s / (x * x) * std::exp(-s / x) : 0.0;
}
}  // namespace

double Smoothstep::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_piece(x, sharpness);
  const double b = bump_piece(1.0 - x, sharpness);
  return a / (a + b);
}

double Smoothstep::derivative(double x) const {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = bump_piece(x, sharpness);
  const double b = bump_piece(1.0 - x, sharpness);
  const double da = bump_piece_derivative(x, sharpness);
  const double db = bump_piece_derivative(1.0 - x, sharpness);
  const double s = a + b;
  return (da * b + a * db) / (s * s);
}

double CutoffSpec::operator()(double radius) const {
  return Smoothstep{sharpness}(2.0 * (1.0 - radius));
}

void CutoffSpec::validate() const {
  require(profile == "smoothstep-exp", ErrorCode::InvalidConfig, "unknown cutoff profile '" + profile + "'");
  require(sharpness > 0.0 && std::isfinite(sharpness), ErrorCode::InvalidConfig, "cutoff sharpness must be > 0");
  require(half_width > 0.0 && std::isfinite(half_width), ErrorCode::InvalidConfig, "cutoff half width must be > 0");
  require(levels >= 3, ErrorCode::InvalidConfig, "need at least three refinement levels");
  require(resolution >= 64 && (resolution & (resolution - 1)) == 0, ErrorCode::InvalidConfig,
          "cutoff resolution must be a power of two >= 64");
  require((resolution >> (levels - 1)) >= 16, ErrorCode::InvalidConfig, "coarsest cutoff grid below 16 points");
  // The multiplier support |xi| <= 1 has to fit below the coarsest Nyquist frequency.
  const double coarse_nyquist = M_PI * (resolution >> (levels - 1)) / (2.0 * half_width);
  require(coarse_nyquist > 1.0, ErrorCode::InvalidConfig, "coarsest cutoff grid does not resolve |xi| <= 1");
}

Json CutoffSpec::to_json() const {
  return Json{{"profile", profile},
              {"sharpness", sharpness},
              {"resolution", resolution},
              {"half_width", half_width},
              {"levels", levels}};
}

CutoffSpec CutoffSpec::from_json(const Json& j) {
  CutoffSpec c;
  c.profile = j.value("profile", c.profile);
  c.sharpness = j.value("sharpness", c.sharpness);
  c.resolution = j.value("resolution", c.resolution);
  c.half_width = j.value("half_width", c.half_width);
  c.levels = j.value("levels", c.levels);
  c.validate();
  return c;
}

}  // namespace nsreg
