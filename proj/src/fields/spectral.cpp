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

#include "fields/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "common/error.hpp"

namespace nsreg {

namespace {
// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft3::Fft3(int n) : n_(n) {
  require(n >= 2 && n % 2 == 0, ErrorCode::Domain, "FFT size must be even");
  real_size_ = static_cast<std::size_t>(n) * n * n;
  spectral_size_ = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  std::lock_guard lock(planner_mutex());
  real_buf_ = fftw_alloc_real(real_size_);
  spec_buf_ = fftw_alloc_complex(spectral_size_);
  require(real_buf_ && spec_buf_, ErrorCode::Domain, "FFT buffer allocation failed");
  fwd_ = fftw_plan_dft_r2c_3d(n, n, n, real_buf_, spec_buf_, FFTW_ESTIMATE);
  inv_ = fftw_plan_dft_c2r_3d(n, n, n, spec_buf_, real_buf_, FFTW_ESTIMATE);
}

Fft3::~Fft3() {
  std::lock_guard lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(fwd_);
  if (inv_) fftw_destroy_plan(inv_);
  fftw_free(real_buf_);
  fftw_free(spec_buf_);
}

void Fft3::forward(std::span<const double> in, std::span<Complex> out) {
  std::copy(in.begin(), in.end(), real_buf_);
  fftw_execute(fwd_);
  const auto* s = reinterpret_cast<const Complex*>(spec_buf_);
  std::copy(s, s + spectral_size_, out.begin());
}

void Fft3::inverse(std::span<const Complex> in, std::span<double> out) {
  std::copy(in.begin(), in.end(), reinterpret_cast<Complex*>(spec_buf_));
  fftw_execute(inv_);
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::size_t i = 0; i < real_size_; ++i) out[i] = real_buf_[i] * scale;
}

Fft3& fft3_for(int n) {
  thread_local std::map<int, std::unique_ptr<Fft3>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft3>(n);
  return *slot;
}

Wavenumbers::Wavenumbers(int n_, double length) : n(n_), nx(n_ / 2 + 1) {
  const double dk = 2.0 * std::numbers::pi / length;
  kx.resize(nx);
  kx_odd.resize(nx);
  mx.resize(nx);
  for (int i = 0; i < nx; ++i) {
    mx[i] = i;
    kx[i] = dk * i;
    kx_odd[i] = (2 * i == n) ? 0.0 : kx[i];
  }
  ky.resize(n);
  ky_odd.resize(n);
  my.resize(n);
  for (int i = 0; i < n; ++i) {
    const int m = i <= n / 2 - 1 ? i : i - n;
    my[i] = m;
    ky[i] = dk * m;
    ky_odd[i] = (2 * i == n) ? 0.0 : ky[i];
  }
}

void leray_project(const Wavenumbers& w, Spectrum3& u) {
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const double k1 = w.kx_odd[ix], k2 = w.ky_odd[iy], k3 = w.ky_odd[iz];
        const double kk = k1 * k1 + k2 * k2 + k3 * k3;
        if (kk == 0.0) continue;
        const std::size_t s = w.index(ix, iy, iz);
        const Complex d = (k1 * u[0][s] + k2 * u[1][s] + k3 * u[2][s]) / kk;
        u[0][s] -= k1 * d;
        u[1][s] -= k2 * d;
        u[2][s] -= k3 * d;
      }
}

double divergence_residual(const Wavenumbers& w, const Spectrum3& u) {
  double num = 0.0, den = 0.0;
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const double k1 = w.kx_odd[ix], k2 = w.ky_odd[iy], k3 = w.ky_odd[iz];
        const std::size_t s = w.index(ix, iy, iz);
        const double kn = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        const double un = std::sqrt(std::norm(u[0][s]) + std::norm(u[1][s]) + std::norm(u[2][s]));
        num = std::max(num, std::abs(k1 * u[0][s] + k2 * u[1][s] + k3 * u[2][s]));
        den = std::max(den, kn * un);
      }
  return den > 0.0 ? num / den : 0.0;
}

std::vector<unsigned char> dealias_mask(const Wavenumbers& w, double fraction) {
  const int cut = static_cast<int>(std::floor(fraction * w.n / 2.0 + 1e-12));
  std::vector<unsigned char> mask(static_cast<std::size_t>(w.n) * w.n * w.nx);
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        // The Nyquist index stores mode -n/2.
        const int ax = (2 * ix == w.n) ? w.n / 2 : ix;
        const bool keep = ax <= cut && std::abs(w.my[iy]) <= cut && std::abs(w.my[iz]) <= cut;
        mask[w.index(ix, iy, iz)] = keep ? 1 : 0;
      }
  return mask;
}

}  // namespace nsreg
