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

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "common/json_util.hpp"
#include "constants/cutoff.hpp"

namespace nsreg {

/// L^1 norm of the kernel of the multiplier i xi_a m(|xi|) / |xi| on the
/// periodic cube [-R, R)^3, sampled on an n^3 grid. `shift` offsets the
/// physical samples by shift * h along every axis (0 = trapezoid nodes,
/// 0.5 = cell midpoints).
double riesz_kernel_l1(const std::function<double(double)>& radial, int n, double half_width,
                       int axis, double shift = 0.0);

struct RefinementLevel {
  int n = 0;
  std::array<double, 3> trapezoid{};   // per axis
  double midpoint = 0.0;               // axis 1 only
  double extrapolated = 0.0;           // Richardson value, NaN on the coarsest level
  double midpoint_extrapolated = 0.0;
};

struct CInftyResult {
  double c_infty = 0.0;
  double error_estimate = 0.0;
  std::array<double, 3> per_axis{};
  double midpoint_value = 0.0;
  std::vector<RefinementLevel> levels;

  /// |extrapolated(N) - extrapolated(N/2)| for every level that has both.
  std::vector<double> successive_changes() const;
  Json to_json() const;
};

/// Relative tolerance the refinement sequence is held to.
inline constexpr double kCInftyTolerance = 1e-4;

/// C_inf = max_a C_a for the given cutoff. The trapezoid rule converges at
/// second order in h on this kernel, so each level is Richardson-extrapolated
/// against its predecessor and the error estimate is the change between the
/// two finest extrapolated values.
CInftyResult compute_c_infty(const CutoffSpec& cutoff);

/// The computed Riesz constant together with the cutoff that produced it.
class ConstantsContext {
 public:
  ConstantsContext(double c_infty, double c_infty_error, CutoffSpec cutoff, Json derivation = Json::object());

  static ConstantsContext compute(const CutoffSpec& cutoff);
  static ConstantsContext from_json(const Json& j);
  static ConstantsContext load(const std::string& path);
  /// The checked-in golden constants shipped with the library.
  static ConstantsContext golden();
  static std::string golden_path();

  double c_infty() const { return c_infty_; }
  double c_infty_error() const { return c_infty_error_; }
  const CutoffSpec& cutoff() const { return cutoff_; }
  const Json& derivation() const { return derivation_; }

  /// FNV-1a over the canonical dump of {cutoff, c_infty, c_infty_error}.
  std::string hash() const;
  Json to_json() const;

 private:
  double c_infty_;
  double c_infty_error_;
  CutoffSpec cutoff_;
  Json derivation_;
};

}  // namespace nsreg
