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

#include "certify/horizons.hpp"
#include "constants/riesz_constant.hpp"
#include "fields/grid_field.hpp"

namespace nsreg {

/// Exponent grids searched by the criteria.
struct SearchConfig {
  std::vector<LebesgueExponent> p_grid;     // (3, inf]
  std::vector<LebesgueExponent> q_grid;     // [1, 3)
  std::vector<LebesgueExponent> l3_p_grid;  // finite p > 3
  /// Margins with |margin| below this (relative) are reported as boundary cases.
  double boundary_band = 1e-12;
  /// Required agreement of the two equivalent norm-pair tests (log domain).
  double equivalence_tolerance = 1e-9;

  /// p in {3.5, 4, 5, 6, 8, 12, 24, inf}, q in {1, 1.5, 2, 2.5, 2.9};
  /// the L^3 test uses the finite part of the p grid.
  static SearchConfig standard();
  Json to_json() const;
  static SearchConfig from_json(const Json& j);
};

struct L3Check {
  bool success = false;
  LebesgueExponent best_p = LebesgueExponent::infinity();
  double threshold = 0.0;
  double norm_l3 = 0.0;
  double margin = 0.0;  // threshold - norm, at best_p
  bool boundary = false;

  Json to_json() const;
};

L3Check check_l3_smallness(double norm_l3, const std::vector<LebesgueExponent>& p_grid, const ConstantsContext& ctx,
                           double boundary_band = 1e-12);
L3Check check_l3_smallness(const GridField& field, const std::vector<LebesgueExponent>& p_grid,
                           const ConstantsContext& ctx);

struct PairPoint {
  TimeBracket bracket;
  double log_q = 0.0;       // log Q^p_q (-inf for zero data)
  double log_inv_k0 = 0.0;  // -log K_0 from the expanded closed form
  double log_margin = 0.0;  // log(1/K_0) - log Q
  bool pass_q = false;      // Q <= 1/K_0
  bool pass_t = false;      // T_r <= T_l
  bool boundary = false;

  Json to_json() const;
};

struct NormPairCheck {
  bool success = false;
  std::optional<PairPoint> best;  // largest log margin, ties to smaller (p, q)
  std::vector<PairPoint> points;

  Json to_json() const;
};

/// Evaluates Q <= 1/K_0 and T_r <= T_l independently at every grid point and
/// requires them to agree; a disagreement beyond the tolerance throws
/// InvariantViolation.
NormPairCheck check_norm_pair(const GridField& field, const SearchConfig& search, const ConstantsContext& ctx);
NormPairCheck check_norm_pair_from_norms(const std::vector<std::pair<LebesgueExponent, double>>& norms,
                                         const SearchConfig& search, const ConstantsContext& ctx);

enum class VerdictType {
  GlobalByL3Smallness,
  GlobalByNormPair,
  GlobalByBracketCrossing,
  UndeterminedBracket,
  SimulationSupported,
};
std::string verdict_name(VerdictType v);

struct Verdict {
  VerdictType type = VerdictType::UndeterminedBracket;
  std::optional<LebesgueExponent> p, q;
  double margin = 0.0;
  std::optional<double> t_l, t_r;  // bracket verdicts
  std::optional<double> t_reached;  // simulation verdicts
  std::string statement;

  Json to_json() const;
};

struct Certificate {
  Verdict verdict;
  L3Check l3;
  NormPairCheck pair;
  std::optional<double> t_l_star, t_r_star;  // max T_l, min T_r over the grid
  std::optional<LebesgueExponent> argmax_p;
  std::optional<std::pair<LebesgueExponent, LebesgueExponent>> argmin_pq;
  std::vector<std::pair<LebesgueExponent, double>> norms;
  Json field_recipe;
  BoxGrid grid;
  std::string attestation;
  double divergence_residual = 0.0;
  SearchConfig search;
  Json constants;
  std::string constants_hash;
  std::string timestamp;

  /// Full document; `with_timestamp = false` gives the reproducible body.
  Json to_json(bool with_timestamp = true) const;
};

/// Verdict precedence: L^3 smallness, then the norm pair, then a crossing
/// of the brackets across different pairs, else the undetermined bracket.
Certificate make_certificate(const GridField& field, const SearchConfig& search, const ConstantsContext& ctx);

}  // namespace nsreg
