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

#include "constants/lebesgue.hpp"
#include "fields/grid_field.hpp"

namespace nsreg {

struct RefinementPair {
  int n = 128;
  double dt = 0.0;
};

struct SolverConfig {
  BoxGrid grid;
  double dt = 1e-2;
  double t_end = 1.0;
  /// Start time; nonzero when restarting from a stamped field.
  double t_start = 0.0;
  double dealias = 2.0 / 3.0;
  std::vector<LebesgueExponent> monitor_p = {LebesgueExponent::any(2.0), LebesgueExponent::any(6.0),
                                             LebesgueExponent::infinity()};
  std::vector<RefinementPair> refinement;
  double cfl = 0.5;
  /// Record monitors every this many steps (the final time is always recorded).
  int output_every = 1;
  /// norm-exploded once ||u||_inf exceeds ceiling * ||u0||_inf ...
  double ceiling = 1e3;
  /// ... or the CFL-limited step falls below dt_min.
  double dt_min = 1e-8;
  double agreement_threshold = 1e-4;

  void validate() const;
  /// Number of steps and the step that divides [t_start, t_end] evenly.
  int steps() const;
  double step() const;

  Json to_json() const;
  static SolverConfig from_json(const Json& j);
};

struct SolverSeries {
  int n = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> l2;
  std::vector<std::vector<double>> norms;  // [monitor][time]
  /// ||u(t)||^2 + 2 int_0^t ||grad u||^2.
  std::vector<double> energy;
  std::vector<double> div_residual;
  int cfl_halvings = 0;
  std::string status = "completed";  // completed | norm-exploded
  double t_reached = 0.0;
  std::string diagnostics;
};

struct SolverRun {
  SolverConfig config;
  SolverSeries series;
  std::vector<SolverSeries> refinements;
  /// Max relative discrepancy of the finite-p monitors between consecutive
  /// resolutions; empty when no refinement was requested.
  std::optional<double> refinement_agreement;
  std::string status = "completed";  // completed | norm-exploded | refinement-diverged
  double t_reached = 0.0;
  double max_div_residual = 0.0;
  /// max_t (energy(t) / ||u0||^2 - 1); the energy inequality wants this <= 1e-8.
  double energy_excess = 0.0;
  GridField final_field;

  Json manifest() const;
  std::string csv() const;
};

/// Fourier-Galerkin solver: Leray-projected, dealiased nonlinearity and
/// integrating-factor RK4 on the periodic box.
SolverRun spectral_run(const GridField& u0, const SolverConfig& cfg);

/// One resolution only, no refinement comparison.
SolverSeries spectral_series(const GridField& u0, const SolverConfig& cfg, GridField* final_field = nullptr);

/// Spectral zero-padding or truncation onto a grid with the same box length.
GridField resample(const GridField& f, int n);

/// Max relative difference of the shared-time finite-p monitors (and L2).
double series_agreement(const SolverSeries& a, const SolverSeries& b, const std::vector<LebesgueExponent>& monitors);

std::vector<std::string> csv_columns(const std::vector<LebesgueExponent>& monitors);

}  // namespace nsreg
