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

#include "constants/cutoff.hpp"
#include "fields/grid_field.hpp"
#include "heatflow/heat_kernel.hpp"

namespace nsreg {

enum class SemigroupMethod { FourierMultiplier, DirectConvolution };

struct SemigroupAction {
  KernelId kernel;
  double t = 1.0;
  SemigroupMethod method = SemigroupMethod::FourierMultiplier;
};

/// Kernel mass that leaks across the box faces, 3 erfc(L / (4 sqrt t)).
double wraparound_mass(const BoxGrid& grid, double t);
/// Smallest box edge whose leakage stays below `tolerance` at time t.
double required_box_length(double t, double tolerance = 1e-10);

/// Convolution of every component with the kernel at time t. Non-periodic
/// fields must sit in a box whose wraparound mass is below 1e-10.
/// The direct method is a separable Riemann-sum convolution with periodic
/// images, defined for G and G_j only.
GridField apply_semigroup(const SemigroupAction& action, const GridField& field);

/// Riesz transform R_a (1-based axis), multiplier i xi_a / |xi|, 0 at xi = 0.
GridField riesz_apply(int axis, const GridField& field);
/// R_a composed with the low-pass cutoff: multiplier i xi_a psi(|xi|) / |xi|.
GridField riesz_cutoff_apply(int axis, const GridField& field, const CutoffSpec& cutoff);

/// Multiplies an n^3 half spectrum by the kernel's Fourier symbol at time t
/// (t = 0 allowed here: identity, i xi_j, or the Riesz-gradient symbol).
void apply_symbol(const KernelId& kernel, double t, const Wavenumbers& w, std::vector<Complex>& spec);

}  // namespace nsreg
