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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "common/json_util.hpp"
#include "constants/cutoff.hpp"
#include "fields/grid_field.hpp"

namespace nsreg {

/// Analytic recipe for a velocity field. Text form:
///
///     sampler [key=value]... [seed=N] [scale=s]
///
/// e.g. "curl_bump alpha=62 lambda=1" or "random_solenoidal kmax=3 seed=42".
/// `scale` realizes u -> s u(s x) exactly: samples are taken from the analytic
/// formula, never interpolated.
///
/// Samplers (defaults in brackets):
///   zero
///   gaussian           amplitude [1] width [1] component [1]   A exp(-|x|^2/w^2) e_c
///   gaussian_vortex    amplitude [1] width [1]                 A (-x2, x1, 0)/w exp(-|x|^2/w^2)
///   taylor_green       amplitude [1] period [2 pi]
///   random_solenoidal  amplitude [1] kmax [4] period [2 pi]    curl of a random potential, rms = A
///   curl_bump          alpha [1] lambda [1] sharpness [1]      lambda psi(alpha lambda x)
struct Recipe {
  std::string sampler = "zero";
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  double scale = 1.0;

  static Recipe parse(std::string_view text);
  static Recipe from_json(const Json& j);  // text string or {sampler, params, seed, scale}
  std::string to_text() const;
  Json to_json() const;

  double param(const std::string& key) const;  // value or the sampler default
  Recipe rescaled(double lambda) const;
  bool periodic() const;
  /// Whether the sampled field is divergence free (before projection).
  bool solenoidal() const;
  void validate() const;

  /// Throws a Domain error naming the minimum box length if the grid cannot
  /// hold the field (support, decay or period mismatch).
  void check_box(const BoxGrid& grid) const;
  /// Human-readable statement of why the truncation to the box is harmless.
  std::string attestation(const BoxGrid& grid) const;
};

/// Deterministic sampling; solenoidal recipes are Leray-projected afterwards
/// (the raw residual is kept on the field).
GridField sample_analytic(const Recipe& recipe, const BoxGrid& grid);

/// lambda psi(alpha lambda x) with psi = (d3 phi, -d3 phi, d2 phi - d1 phi)
/// and phi(x) = S(2 - |x|) for the smoothstep S.
GridField curl_bump(double alpha, double lambda, const Smoothstep& phi_profile, const BoxGrid& grid);

/// Box for the field s u(s x): same n, edge shrunk by 1/s.
BoxGrid rescaled_grid(const BoxGrid& grid, double lambda);
GridField rescale(const Recipe& recipe, const BoxGrid& grid, double lambda);

}  // namespace nsreg
