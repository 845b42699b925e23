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

#include "mildsolve/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace nsreg {

QuadraticTerm::QuadraticTerm(const BoxGrid& grid, double dealias)
    : grid_(grid), w_(grid.n, grid.length), mask_(dealias_mask(w_, dealias)) {
  require(dealias > 0.0 && dealias <= 1.0, ErrorCode::InvalidConfig, "dealias fraction must lie in (0, 1]");
  for (auto& p : phys_) p.resize(grid.size());
  prod_.resize(grid.size());
  tmp_.resize(mask_.size());
}

double QuadraticTerm::evaluate(const Spectrum3& u_hat, Spectrum3& out) {
  Fft3& fft = fft3_for(grid_.n);
  const std::size_t ns = mask_.size();
  for (int c = 0; c < 3; ++c) {
    for (std::size_t s = 0; s < ns; ++s) tmp_[s] = mask_[s] ? u_hat[c][s] : Complex{};
    fft.inverse(tmp_, phys_[c]);
  }
  double umax = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    umax = std::max(umax, std::sqrt(phys_[0][i] * phys_[0][i] + phys_[1][i] * phys_[1][i] + phys_[2][i] * phys_[2][i]));

  for (auto& c : out) c.assign(ns, Complex{});
  // out_j = i sum_m k_m (u_m u_j)^ over the six distinct products.
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      for (std::size_t i = 0; i < grid_.size(); ++i) prod_[i] = phys_[a][i] * phys_[b][i];
      fft.forward(prod_, tmp_);
      for (int iz = 0; iz < w_.n; ++iz)
        for (int iy = 0; iy < w_.n; ++iy)
          for (int ix = 0; ix < w_.nx; ++ix) {
            const std::size_t s = w_.index(ix, iy, iz);
            if (!mask_[s]) continue;
            const double k[3] = {w_.kx_odd[ix], w_.ky_odd[iy], w_.ky_odd[iz]};
            const Complex t = Complex{0.0, 1.0} * tmp_[s];
            out[b][s] += k[a] * t;
            if (a != b) out[a][s] += k[b] * t;
          }
    }
  leray_project(w_, out);
  return umax;
}

Spectrum3 zero_spectrum(const Wavenumbers& w) {
  Spectrum3 s;
  for (auto& c : s) c.assign(static_cast<std::size_t>(w.n) * w.n * w.nx, Complex{});
  return s;
}

double spectral_energy_sum(const Wavenumbers& w, const Spectrum3& u) {
  double total = 0.0;
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const std::size_t s = w.index(ix, iy, iz);
        total += w.parseval_weight(ix) * (std::norm(u[0][s]) + std::norm(u[1][s]) + std::norm(u[2][s]));
      }
  return total;
}

double l2_squared(const BoxGrid& grid, const Wavenumbers& w, const Spectrum3& u) {
  const double h = grid.spacing();
  return spectral_energy_sum(w, u) * h * h * h / static_cast<double>(grid.size());
}

void heat_multiply(const Wavenumbers& w, double t, Spectrum3& u) {
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const std::size_t s = w.index(ix, iy, iz);
        const double e = std::exp(-t * w.k2(ix, iy, iz));
        for (auto& c : u) c[s] *= e;
      }
}

GridField spectrum_to_field(const BoxGrid& grid, const Spectrum3& u) {
  GridField f;
  f.grid = grid;
  from_spectrum(u, f);
  return f;
}

}  // namespace nsreg
