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

#include "common/json_util.hpp"

namespace nsreg {

/// C-infinity transition from 0 (x <= 0) to 1 (x >= 1) built from
/// f(x) = exp(-sharpness / x):  S(x) = f(x) / (f(x) + f(1 - x)).
struct Smoothstep {
  double sharpness = 1.0;

  double operator()(double x) const;
  double derivative(double x) const;
};

/// Radial Littlewood-Paley cutoff psi(xi) = S(2 (1 - |xi|)): equal to 1 on
/// |xi| <= 1/2, to 0 on |xi| >= 1, monotone in between. The quadrature grid
/// for the Riesz constant lives alongside: a periodic cube [-R, R)^3 sampled
/// with `resolution` points per axis, refined through `levels` dyadic grids
/// ending at `resolution`.
struct CutoffSpec {
  std::string profile = "smoothstep-exp";
  double sharpness = 1.0;
  int resolution = 256;
  double half_width = 8.0;
  int levels = 4;

  double operator()(double radius) const;

  Json to_json() const;
  static CutoffSpec from_json(const Json& j);
  void validate() const;
};

}  // namespace nsreg
