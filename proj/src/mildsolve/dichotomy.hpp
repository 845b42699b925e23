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

#include "certify/certificate.hpp"
#include "certify/horizons.hpp"
#include "mildsolve/spectral_solver.hpp"

namespace nsreg {

struct EnvelopeCheck {
  std::string kind;  // decay | blowup-floor
  LebesgueExponent p = LebesgueExponent::infinity();
  int samples = 0;
  int violations = 0;
  /// decay: max measured/envelope; blowup-floor: min measured/floor.
  double worst_ratio = 0.0;
  bool pass = true;
  std::string note;

  Json to_json() const;
};

struct DichotomyRecord {
  Verdict verdict;
  TimeBracket bracket;
  std::string run_status;
  double t_reached = 0.0;
  std::optional<double> refinement_agreement;
  std::optional<EnvelopeCheck> decay;
  std::optional<EnvelopeCheck> blowup_floor;
  /// Relative monitor discrepancy against a run in a larger box, when one was made.
  std::optional<double> box_sensitivity;
  std::string box_note;

  Json to_json() const;
};

/// Upgrades the bracket to SimulationSupported when a converged run survives
/// past T_r, and compares the measured norms with the decay envelope (t > T_r)
/// or, for exploded runs, with the blow-up floor.
DichotomyRecord dichotomy_verdict(const SolverRun& run, const TimeBracket& bracket, const ConstantsContext& ctx,
                                  const SolverRun* larger_box = nullptr);

}  // namespace nsreg
