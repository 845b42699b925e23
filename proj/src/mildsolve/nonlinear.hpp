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
#include "fields/spectral.hpp"

namespace nsreg {

/// The quadratic term of the mild formulation in Fourier space,
///
///     B(u)_j = i xi_m (u^m u^j)^ + G_klj-symbol (u^k u^l)^ = P[i xi . (u (x) u)]_j,
///
/// with P the Leray projector. Products are formed from the dealiased
/// velocity and the result is dealiased again, so the discrete term is
/// alias-free and orthogonal to the masked velocity.
class QuadraticTerm {
 public:
  QuadraticTerm(const BoxGrid& grid, double dealias);

  /// out = B(u_hat). Also returns max |u| of the dealiased velocity.
  double evaluate(const Spectrum3& u_hat, Spectrum3& out);

  const Wavenumbers& wavenumbers() const { return w_; }
  const std::vector<unsigned char>& mask() const { return mask_; }
  const BoxGrid& grid() const { return grid_; }

 private:
  BoxGrid grid_;
  Wavenumbers w_;
  std::vector<unsigned char> mask_;
  std::array<std::vector<double>, 3> phys_;
  std::vector<double> prod_;
  std::vector<Complex> tmp_;
};

/// Spectrum3 helpers shared by the solvers.
Spectrum3 zero_spectrum(const Wavenumbers& w);
/// sum over the full spectrum of |u_hat|^2 (half-spectrum weights applied).
double spectral_energy_sum(const Wavenumbers& w, const Spectrum3& u);
/// ||u||_{L^2}^2 from spectral coefficients: h^3 / n^3 * sum |u_hat|^2.
double l2_squared(const BoxGrid& grid, const Wavenumbers& w, const Spectrum3& u);
/// Multiplies every component by exp(-t |k|^2).
void heat_multiply(const Wavenumbers& w, double t, Spectrum3& u);
GridField spectrum_to_field(const BoxGrid& grid, const Spectrum3& u);

}  // namespace nsreg
