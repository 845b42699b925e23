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
#include <utility>
#include <vector>

#include "constants/lebesgue.hpp"
#include "constants/riesz_constant.hpp"
#include "fields/recipe.hpp"

namespace nsreg {

/// Which family of estimates to check: the L^inf bound of the Riesz
/// transform, or the semigroup bounds for G, G_m and G_klj.
enum class LemmaId { Riesz, Heat, HeatGradient, HeatRieszGradient };

/// Accepts "riesz", "heat", "heat-gradient", "heat-riesz-gradient" and the
/// numeric aliases 2.1, 3.1, 3.2, 3.3.
LemmaId parse_lemma_id(const std::string& s);
std::string lemma_name(LemmaId id);
std::string lemma_number(LemmaId id);

struct LemmaCase {
  std::string estimate;  // e.g. "Lq->Lp"
  std::string field;     // recipe text
  std::string kernel;    // operator(s) maximized over
  double t = 0.0;
  std::optional<LebesgueExponent> p, q;
  double lhs = 0.0, rhs = 0.0, margin = 0.0;
  bool pass = true;
  std::string note;

  Json to_json() const;
};

struct LemmaReport {
  LemmaId lemma = LemmaId::Heat;
  double tolerance = 1e-9;
  std::vector<LemmaCase> cases;
  bool pass = true;

  std::size_t failures() const;
  Json to_json() const;
};

struct LemmaSweep {
  std::vector<double> t_grid{0.05, 0.5, 5.0};
  std::vector<LebesgueExponent> p_grid;
  std::vector<double> q_grid{1.5, 2.0, 2.5};
  std::vector<std::pair<Recipe, BoxGrid>> fields;
  double tolerance = 1e-9;  // margin >= -tolerance * rhs
  int band_limited_count = 50;
  std::uint64_t band_limited_seed = 2024;
  int band_limited_kmax = 6;
  int band_limited_n = 32;

  /// p in {4, 6, 12, inf}; Gaussian, Gaussian vortex and a resolved example
  /// field in a 48-wide box at n = 128, and a Taylor-Green cell at n = 32.
  static LemmaSweep standard();
  Json to_json() const;
  static LemmaSweep from_json(const Json& j);
};

/// Evaluates every estimate instance of the sweep. Failures are reported as
/// data, never thrown.
LemmaReport verify_lemma(LemmaId lemma, const LemmaSweep& sweep, const ConstantsContext& ctx);

}  // namespace nsreg
