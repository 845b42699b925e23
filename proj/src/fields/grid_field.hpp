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
#include <cstddef>
#include <vector>

#include "common/json_util.hpp"
#include "fields/spectral.hpp"

namespace nsreg {

/// Uniform periodic cube of edge `length` with n samples per axis. Samples sit
/// at x_i = -L/2 + i h, h = L/n, so the origin is always a grid node.
struct BoxGrid {
  static constexpr int kMaxPoints = 512;  // n^3 doubles per component stays below 1 GiB

  int n = 64;
  double length = 16.0;

  double spacing() const { return length / n; }
  double coord(int i) const { return -0.5 * length + i * spacing(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(n) * k);
  }
  void validate() const;

  Json to_json() const;
  static BoxGrid from_json(const Json& j);

  friend bool operator==(const BoxGrid&, const BoxGrid&) = default;
};

/// Three-component velocity field sampled on a BoxGrid.
struct GridField {
  BoxGrid grid;
  std::array<std::vector<double>, 3> u;
  Json recipe = "derived";
  bool solenoidal = false;
  /// Periodic data (norms over one period, no kernel wraparound concerns).
  bool periodic = false;
  /// Spectral divergence residual of the samples before any projection.
  double raw_divergence = 0.0;

  static GridField zeros(const BoxGrid& grid);

  double magnitude(std::size_t i) const;
  bool all_finite() const;
  bool is_zero() const;
};

Spectrum3 to_spectrum(const GridField& f);
/// Inverse transform into `f` (grid taken from f, metadata untouched).
void from_spectrum(const Spectrum3& s, GridField& f);

double divergence_residual(const GridField& f);

/// Leray-projects the samples, recording the residual seen before projection,
/// and flags the field solenoidal.
void project_solenoidal(GridField& f);

}  // namespace nsreg
