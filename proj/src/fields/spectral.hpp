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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace nsreg {

using Complex = std::complex<double>;

/// Real-to-complex 3-D transform on an n^3 cube. Real arrays are indexed
/// i + n (j + n k) with x fastest; the half spectrum halves the x axis and is
/// indexed ix + (n/2+1) (iy + n iz). forward() is unnormalized, inverse()
/// divides by n^3, so inverse(forward(u)) == u.
///
/// Plans use FFTW_ESTIMATE so results never depend on timing measurements.
/// A Fft3 owns scratch buffers and must not be shared across threads; use
/// fft3_for() for a per-thread cached instance.
class Fft3 {
 public:
  explicit Fft3(int n);
  ~Fft3();
  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  int n() const { return n_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t spectral_size() const { return spectral_size_; }

  void forward(std::span<const double> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  int n_;
  std::size_t real_size_;
  std::size_t spectral_size_;
  double* real_buf_ = nullptr;
  fftw_complex* spec_buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
};

Fft3& fft3_for(int n);

/// Angular wavenumbers of a periodic cube of edge `length` sampled with n
/// points per axis. `odd` variants zero the Nyquist mode, which is what first
/// derivatives and Riesz symbols need to keep real fields real.
struct Wavenumbers {
  int n = 0;
  int nx = 0;  // n/2 + 1
  std::vector<double> kx, ky;         // kx: size nx, ky (= kz): size n
  std::vector<double> kx_odd, ky_odd;
  std::vector<int> mx, my;            // signed integer mode numbers

  Wavenumbers(int n, double length);

  std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) + static_cast<std::size_t>(nx) *
           (static_cast<std::size_t>(iy) + static_cast<std::size_t>(n) * static_cast<std::size_t>(iz));
  }
  double k2(int ix, int iy, int iz) const {
    return kx[ix] * kx[ix] + ky[iy] * ky[iy] + ky[iz] * ky[iz];
  }
  /// Weight of a half-spectrum entry in a full-spectrum sum (1 or 2).
  double parseval_weight(int ix) const { return (ix == 0 || 2 * ix == n) ? 1.0 : 2.0; }
};

using Spectrum3 = std::array<std::vector<Complex>, 3>;

/// In-place Leray projection I - k k^T / |k|^2 with the odd wavenumbers.
void leray_project(const Wavenumbers& w, Spectrum3& u);

/// max |k . u_hat| / max |k| |u_hat|, zero for a zero field.
double divergence_residual(const Wavenumbers& w, const Spectrum3& u);

/// 1 where every |m_i| <= floor(fraction * n / 2), else 0.
std::vector<unsigned char> dealias_mask(const Wavenumbers& w, double fraction);

}  // namespace nsreg
