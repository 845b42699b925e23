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

#include "mildsolve/duhamel.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "common/error.hpp"

namespace nsreg {

double phi1(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; }

double phi2(double z) {
  if (z < 0.1) {
    // sum_n (-z)^n (n+1) / (n+2)!
    double term = 0.5, sum = 0.0;
    for (int n = 0; n < 16; ++n) {
      sum += term * (n + 1);
      term *= -z / (n + 3);
    }
    return sum;
  }
  return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

DuhamelIntegrator::DuhamelIntegrator(const Wavenumbers& w, double dtau) : w_(w) {
  require(dtau > 0.0, ErrorCode::Domain, "Duhamel step must be positive");
  const std::size_t ns = static_cast<std::size_t>(w.n) * w.n * w.nx;
  decay_.resize(ns);
  w_old_.resize(ns);
  w_new_.resize(ns);
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const std::size_t s = w.index(ix, iy, iz);
        const double z = w.k2(ix, iy, iz) * dtau;
        const double p1 = phi1(z), p2 = phi2(z);
        decay_[s] = std::exp(-z);
        w_old_[s] = dtau * p2;
        w_new_[s] = dtau * (p1 - p2);
      }
  acc_ = zero_spectrum(w);
}

void DuhamelIntegrator::push(const Spectrum3& b) {
  if (intervals_ >= 0) {
    for (int c = 0; c < 3; ++c) {
      auto& a = acc_[c];
      const auto& p = prev_[c];
      const auto& n = b[c];
      for (std::size_t s = 0; s < a.size(); ++s) a[s] = decay_[s] * a[s] + w_old_[s] * p[s] + w_new_[s] * n[s];
    }
  }
  prev_ = b;
  ++intervals_;
}

GridField duhamel_apply(const std::vector<GridField>& trajectory, double t, const GridField& u0,
                        const DuhamelOptions& options) {
  require(trajectory.size() >= 2, ErrorCode::Domain, "trajectory needs at least the two endpoints");
  require(std::isfinite(t) && t > 0.0, ErrorCode::Domain, "Duhamel time must be positive");
  for (const auto& f : trajectory)
    require(f.grid == u0.grid, ErrorCode::Domain, "trajectory and initial data live on different grids");
  const int m = static_cast<int>(trajectory.size()) - 1;
  QuadraticTerm quad(u0.grid, options.dealias);
  const Wavenumbers& w = quad.wavenumbers();

  DuhamelIntegrator fine(w, t / m);
  std::optional<DuhamelIntegrator> coarse;
  if (m % 2 == 0) coarse.emplace(w, 2.0 * t / m);
  Spectrum3 b = zero_spectrum(w);
  for (int i = 0; i <= m; ++i) {
    quad.evaluate(to_spectrum(trajectory[i]), b);
    fine.push(b);
    if (coarse && i % 2 == 0) coarse->push(b);
  }

  Spectrum3 u = to_spectrum(u0);
  heat_multiply(w, t, u);
  const double linear = std::sqrt(l2_squared(u0.grid, w, u));
  for (int c = 0; c < 3; ++c)
    for (std::size_t s = 0; s < u[c].size(); ++s) u[c][s] -= fine.integral()[c][s];

  if (coarse) {
    Spectrum3 diff = fine.integral();
    for (int c = 0; c < 3; ++c)
      for (std::size_t s = 0; s < diff[c].size(); ++s) diff[c][s] -= coarse->integral()[c][s];
    // Second-order rule: the fine error is about a third of the difference.
    const double est = std::sqrt(l2_squared(u0.grid, w, diff)) / 3.0;
    const double scale = std::max(std::sqrt(l2_squared(u0.grid, w, u)), linear);
    if (est > options.tolerance * scale) {
      std::ostringstream os;
      os.precision(4);
      os << "tau grid too coarse: Duhamel error estimate " << est / scale << " exceeds " << options.tolerance;
      fail(ErrorCode::RefinementFailure, os.str());
    }
  }
  GridField out = spectrum_to_field(u0.grid, u);
  out.recipe = Json{{"derived_from", u0.recipe}, {"op", "duhamel"}, {"t", t}};
  out.solenoidal = u0.solenoidal;
  out.periodic = u0.periodic;
  return out;
}

}  // namespace nsreg
