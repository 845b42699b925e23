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

#include <vector>

#include "fields/grid_field.hpp"
#include "mildsolve/nonlinear.hpp"

namespace nsreg {

/// Running value of I(t) = int_0^t G(t - tau) B(tau) dtau on a uniform tau
/// grid. B is interpolated linearly between nodes and the heat factor is
/// integrated exactly per mode (product integration), so the rule stays
/// second order however stiff exp(-|k|^2 dtau) is.
class DuhamelIntegrator {
 public:
  DuhamelIntegrator(const Wavenumbers& w, double dtau);

  /// Feeds B at the next node; the first call fixes tau = 0.
  void push(const Spectrum3& b);
  const Spectrum3& integral() const { return acc_; }
  int intervals() const { return intervals_; }

 private:
  const Wavenumbers& w_;
  std::vector<double> decay_, w_old_, w_new_;
  Spectrum3 acc_, prev_;
  int intervals_ = -1;
};

/// phi1(z) = (1 - e^-z)/z and phi2(z) = (1 - e^-z (1+z))/z^2, stable near 0.
double phi1(double z);
double phi2(double z);

struct DuhamelOptions {
  double dealias = 2.0 / 3.0;
  /// Allowed relative size of the half-grid error estimate.
  double tolerance = 1e-6;
};

/// u(t) = G(t) u0 - int_0^t G(t - tau) B(u(tau)) dtau for a trajectory given
/// at M + 1 equally spaced times 0, t/M, ..., t. Throws RefinementFailure
/// when the estimate from the every-other-node rule exceeds the tolerance.
GridField duhamel_apply(const std::vector<GridField>& trajectory, double t, const GridField& u0,
                        const DuhamelOptions& options = {});

}  // namespace nsreg
