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

#include "heatflow/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "common/error.hpp"

namespace nsreg {

namespace {

GridField derived_like(const GridField& f) {
  GridField out;
  out.grid = f.grid;
  out.recipe = Json{{"derived_from", f.recipe}};
  out.solenoidal = f.solenoidal;
  out.periodic = f.periodic;
  return out;
}

// 1-D periodic kernel samples h * k(d h) summed over the neighbouring images.
std::vector<double> periodic_line_kernel(const BoxGrid& g, double t, bool derivative) {
  const int n = g.n;
  const double h = g.spacing();
  std::vector<double> k(n, 0.0);
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (int img = -2; img <= 2; ++img) {
      // offsets wrap into [-L/2, L/2)
      double x = (d <= n / 2 - 1 ? d : d - n) * h + img * g.length;
      const double gx = norm * std::exp(-x * x / (4.0 * t));
      s += derivative ? -x / (2.0 * t) * gx : gx;
    }
    k[d] = s * h;
  }
  return k;
}

// out(i) = sum_d k(d) in(i - d) along one axis of an n^3 array.
void convolve_axis(const std::vector<double>& in, std::vector<double>& out, const std::vector<double>& k,
                   int n, int axis) {
  const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n);
  out.assign(in.size(), 0.0);
  for (std::size_t base = 0; base < in.size(); ++base) {
    // Only visit line starts.
    if ((base / stride) % n != 0) continue;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int d = 0; d < n; ++d) {
        const int src = (i - d + n) % n;
        acc += k[d] * in[base + src * stride];
      }
      out[base + i * stride] = acc;
    }
  }
}

void check_wraparound(const GridField& f, double t) {
  if (f.periodic) return;
  const double leak = wraparound_mass(f.grid, t);
  if (leak >= 1e-10) {
    std::ostringstream os;
    os.precision(6);
    os << "heat kernel wraps around the box at t = " << t << " (leaked mass " << leak
       << "); need box length >= " << required_box_length(t);
    fail(ErrorCode::Domain, os.str());
  }
}

}  // namespace

double wraparound_mass(const BoxGrid& grid, double t) {
  return 3.0 * std::erfc(grid.length / (4.0 * std::sqrt(t)));
}

double required_box_length(double t, double tolerance) {
  return 4.0 * std::sqrt(t) * boost::math::erfc_inv(tolerance / 3.0);
}

void apply_symbol(const KernelId& kernel, double t, const Wavenumbers& w, std::vector<Complex>& spec) {
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const std::size_t s = w.index(ix, iy, iz);
        Complex m = t > 0.0 ? std::exp(-t * w.k2(ix, iy, iz)) : 1.0;
        if (kernel.kind != KernelKind::G) {
          const double ko[3] = {w.kx_odd[ix], w.ky_odd[iy], w.ky_odd[iz]};
          m *= Complex{0.0, ko[kernel.j - 1]};
          if (kernel.kind == KernelKind::Gklj) {
            const double kk = ko[0] * ko[0] + ko[1] * ko[1] + ko[2] * ko[2];
            // (i xi_k / |xi|)(i xi_l / |xi|) = -xi_k xi_l / |xi|^2
            m *= kk > 0.0 ? -ko[kernel.k - 1] * ko[kernel.l - 1] / kk : 0.0;
          }
        }
        spec[s] *= m;
      }
}

GridField apply_semigroup(const SemigroupAction& action, const GridField& field) {
  action.kernel.validate();
  require(std::isfinite(action.t) && action.t > 0.0, ErrorCode::Domain, "semigroup time must be positive");
  check_wraparound(field, action.t);
  GridField out = derived_like(field);

  if (action.method == SemigroupMethod::FourierMultiplier) {
    const Wavenumbers w(field.grid.n, field.grid.length);
    Fft3& fft = fft3_for(field.grid.n);
    std::vector<Complex> spec(fft.spectral_size());
    for (int c = 0; c < 3; ++c) {
      fft.forward(field.u[c], spec);
      apply_symbol(action.kernel, action.t, w, spec);
      out.u[c].resize(fft.real_size());
      fft.inverse(spec, out.u[c]);
    }
    return out;
  }

  require(action.kernel.kind != KernelKind::Gklj, ErrorCode::Unsupported,
          "direct convolution is available for G and G_j only");
  const auto plain = periodic_line_kernel(field.grid, action.t, false);
  const auto deriv = periodic_line_kernel(field.grid, action.t, true);
  std::vector<double> a, b;
  for (int c = 0; c < 3; ++c) {
    a = field.u[c];
    for (int axis = 0; axis < 3; ++axis) {
      const bool d = action.kernel.kind == KernelKind::Gj && action.kernel.j - 1 == axis;
      convolve_axis(a, b, d ? deriv : plain, field.grid.n, axis);
      a.swap(b);
    }
    out.u[c] = std::move(a);
  }
  return out;
}

namespace {
template <class Symbol>
GridField apply_radial_riesz(int axis, const GridField& field, Symbol radial) {
  require(axis >= 1 && axis <= 3, ErrorCode::Domain, "Riesz axis must be 1, 2 or 3");
  GridField out = derived_like(field);
  const Wavenumbers w(field.grid.n, field.grid.length);
  Fft3& fft = fft3_for(field.grid.n);
  std::vector<Complex> spec(fft.spectral_size());
  for (int c = 0; c < 3; ++c) {
    fft.forward(field.u[c], spec);
    for (int iz = 0; iz < w.n; ++iz)
      for (int iy = 0; iy < w.n; ++iy)
        for (int ix = 0; ix < w.nx; ++ix) {
          const double ko[3] = {w.kx_odd[ix], w.ky_odd[iy], w.ky_odd[iz]};
          const double kn = std::sqrt(ko[0] * ko[0] + ko[1] * ko[1] + ko[2] * ko[2]);
          const std::size_t s = w.index(ix, iy, iz);
          spec[s] *= kn > 0.0 ? Complex{0.0, ko[axis - 1] / kn * radial(kn)} : Complex{};
        }
    out.u[c].resize(fft.real_size());
    fft.inverse(spec, out.u[c]);
  }
  return out;
}
}  // namespace

GridField riesz_apply(int axis, const GridField& field) {
  return apply_radial_riesz(axis, field, [](double) { return 1.0; });
}

GridField riesz_cutoff_apply(int axis, const GridField& field, const CutoffSpec& cutoff) {
  return apply_radial_riesz(axis, field, [&cutoff](double r) { return cutoff(r); });
}

}  // namespace nsreg
