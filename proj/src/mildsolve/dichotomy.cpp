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

#include "mildsolve/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nsreg {

Json EnvelopeCheck::to_json() const {
  return Json{{"kind", kind},   {"p", p.to_json()},         {"samples", samples}, {"violations", violations},
              {"pass", pass},   {"worst_ratio", json_number(worst_ratio)}, {"note", note}};
}

Json DichotomyRecord::to_json() const {
  Json j{{"verdict", verdict.to_json()},
         {"bracket", bracket.to_json()},
         {"run_status", run_status},
         {"t_reached", t_reached},
         {"refinement_agreement", refinement_agreement ? json_number(*refinement_agreement) : Json(nullptr)},
         {"decay_check", decay ? decay->to_json() : Json(nullptr)},
         {"blowup_floor_check", blowup_floor ? blowup_floor->to_json() : Json(nullptr)},
         {"box_sensitivity", box_sensitivity ? json_number(*box_sensitivity) : Json(nullptr)},
         {"box_note", box_note}};
  return j;
}

namespace {

std::optional<std::size_t> monitor_index(const SolverRun& run, LebesgueExponent p) {
  const auto& m = run.config.monitor_p;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == p) return i;
  return std::nullopt;
}

}  // namespace

DichotomyRecord dichotomy_verdict(const SolverRun& run, const TimeBracket& bracket, const ConstantsContext& ctx,
                                  const SolverRun* larger_box) {
  DichotomyRecord rec;
  rec.bracket = bracket;
  rec.run_status = run.status;
  rec.t_reached = run.t_reached;
  rec.refinement_agreement = run.refinement_agreement;
  rec.verdict.p = bracket.p;
  rec.verdict.q = bracket.q;
  rec.verdict.t_l = bracket.t_l;
  rec.verdict.t_r = bracket.t_r;

  const bool converged = run.status == "completed" && run.refinement_agreement &&
                         *run.refinement_agreement <= run.config.agreement_threshold;
  const bool past = bracket.t_r && run.t_reached > *bracket.t_r;
  if (converged && past) {
    rec.verdict.type = VerdictType::SimulationSupported;
    rec.verdict.t_reached = run.t_reached;
    rec.verdict.statement =
        "numerical evidence consistent with T_max = inf; by the dichotomy, survival past T_r excludes finite "
        "T_max under the theorem's hypotheses, subject to discretization error";
  } else {
    rec.verdict.type = VerdictType::UndeterminedBracket;
    std::ostringstream os;
    os << "bracket stands: either T_max = inf or T_max in (T_l, T_r]; ";
    if (!bracket.t_r) os << "no finite T_r (zero data)";
    else if (!past) os << "run stopped at t = " << run.t_reached << " <= T_r = " << *bracket.t_r;
    else if (run.status != "completed") os << "run status " << run.status;
    else os << "no converged refinement comparison";
    rec.verdict.statement = os.str();
  }

  const auto idx = monitor_index(run, bracket.p);
  const auto& s = run.series;
  if (bracket.t_r) {
    EnvelopeCheck d;
    d.kind = "decay";
    d.p = bracket.p;
    if (!idx) {
      d.note = "L^" + bracket.p.to_string() + " is not monitored";
    } else {
      for (std::size_t i = 0; i < s.times.size(); ++i) {
        if (!(s.times[i] > *bracket.t_r)) continue;
        const double env = decay_envelope(s.times[i], bracket.p, bracket.q, bracket.norm_q, ctx);
        const double ratio = s.norms[*idx][i] / env;
        ++d.samples;
        d.worst_ratio = std::max(d.worst_ratio, ratio);
        if (ratio > 1.0) ++d.violations;
      }
      d.pass = d.violations == 0;
      if (d.samples == 0) d.note = "no samples past T_r";
    }
    rec.decay = d;
  }

  if (run.status == "norm-exploded" && idx && run.t_reached > 0.0) {
    EnvelopeCheck f;
    f.kind = "blowup-floor";
    f.p = bracket.p;
    f.worst_ratio = std::numeric_limits<double>::infinity();
    // The last good time stands in for T_max; a later true T_max only lowers the floor.
    const double t_max = run.t_reached;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      if (!(s.times[i] < t_max)) continue;
      const double ratio = s.norms[*idx][i] / blowup_floor(s.times[i], bracket.p, t_max, ctx);
      ++f.samples;
      f.worst_ratio = std::min(f.worst_ratio, ratio);
      if (ratio < 1.0) ++f.violations;
    }
    f.pass = f.violations == 0;
    f.note = "T_max estimated by the last completed step";
    rec.blowup_floor = f;
  }

  if (larger_box) {
    rec.box_sensitivity = series_agreement(run.series, larger_box->series, run.config.monitor_p);
    std::ostringstream os;
    os << "compared against box length " << larger_box->config.grid.length;
    rec.box_note = os.str();
  } else {
    rec.box_note = "box sensitivity not run; the periodic box truncation error is unquantified";
  }
  return rec;
}

}  // namespace nsreg
