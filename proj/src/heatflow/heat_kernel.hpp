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
#include <string>

namespace nsreg {

enum class KernelKind { G, Gj, Gklj };

/// G, its gradient G_j = d_j G, or G_klj = R_k R_l G_j. Indices are 1-based.
struct KernelId {
  KernelKind kind = KernelKind::G;
  int k = 0, l = 0, j = 0;

  static KernelId heat() { return {}; }
  static KernelId gradient(int j) { return {KernelKind::Gj, 0, 0, j}; }
  static KernelId riesz_gradient(int k, int l, int j) { return {KernelKind::Gklj, k, l, j}; }

  void validate() const;
  std::string name() const;
};

/// Closed-form value of G or G_j at (t, x); G_klj is Unsupported.
double kernel_value(const KernelId& kernel, double t, const std::array<double, 3>& x);

/// Integral of |kernel(t, .)| by tensor Gauss-Legendre over a cube that holds
/// all but ~1e-16 of the Gaussian mass.
double kernel_l1(const KernelId& kernel, double t);

/// sup_x |kernel(t, x)|; for G_j a 1-D Brent maximization along axis j.
double kernel_sup(const KernelId& kernel, double t);

}  // namespace nsreg
