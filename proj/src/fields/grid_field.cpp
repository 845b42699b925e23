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

#include "fields/grid_field.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace nsreg {

void BoxGrid::validate() const {
  require(n >= 4 && (n & (n - 1)) == 0, ErrorCode::InvalidConfig, "grid n must be a power of two >= 4");
  require(n <= kMaxPoints, ErrorCode::InvalidConfig, "grid n exceeds the memory cap of 512 per axis");
  require(std::isfinite(length) && length > 0.0, ErrorCode::InvalidConfig, "grid length must be positive");
}

Json BoxGrid::to_json() const { return Json{{"n", n}, {"length", length}}; }

BoxGrid BoxGrid::from_json(const Json& j) {
  BoxGrid g;
  g.n = j.value("n", g.n);
  g.length = j.value("length", g.length);
  g.validate();
  return g;
}

GridField GridField::zeros(const BoxGrid& grid) {
  grid.validate();
  GridField f;
  f.grid = grid;
  for (auto& c : f.u) c.assign(grid.size(), 0.0);
  f.recipe = "zero";
  f.solenoidal = true;
  return f;
}

double GridField::magnitude(std::size_t i) const {
  return std::sqrt(u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i]);
}

bool GridField::all_finite() const {
  for (const auto& c : u)
    for (double v : c)
      if (!std::isfinite(v)) return false;
  return true;
}

bool GridField::is_zero() const {
  for (const auto& c : u)
    for (double v : c)
      if (v != 0.0) return false;
  return true;
}

Spectrum3 to_spectrum(const GridField& f) {
  Fft3& fft = fft3_for(f.grid.n);
  Spectrum3 s;
  for (int c = 0; c < 3; ++c) {
    s[c].resize(fft.spectral_size());
    fft.forward(f.u[c], s[c]);
  }
  return s;
}

void from_spectrum(const Spectrum3& s, GridField& f) {
  Fft3& fft = fft3_for(f.grid.n);
  for (int c = 0; c < 3; ++c) {
    f.u[c].resize(fft.real_size());
    fft.inverse(s[c], f.u[c]);
  }
}

double divergence_residual(const GridField& f) {
  return divergence_residual(Wavenumbers(f.grid.n, f.grid.length), to_spectrum(f));
}

void project_solenoidal(GridField& f) {
  const Wavenumbers w(f.grid.n, f.grid.length);
  auto s = to_spectrum(f);
  f.raw_divergence = divergence_residual(w, s);
  leray_project(w, s);
  from_spectrum(s, f);
  f.solenoidal = true;
}

}  // namespace nsreg
