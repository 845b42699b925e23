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

#include "constants/riesz_constant.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "common/error.hpp"
#include "fields/spectral.hpp"

#ifndef NSREG_DEFAULT_CONSTANTS
#define NSREG_DEFAULT_CONSTANTS "data/golden_constants.json"
#endif

namespace nsreg {

namespace {

constexpr int kGoldenVersion = 1;

// Neumaier-compensated sum; sequential, hence deterministic.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

double richardson(double fine, double coarse) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace

double riesz_kernel_l1(const std::function<double(double)>& radial, int n, double half_width,
                       int axis, double shift) {
  require(axis >= 0 && axis < 3, ErrorCode::Domain, "axis must be 0, 1 or 2");
  const double length = 2.0 * half_width;
  const double h = length / n;
  Wavenumbers w(n, length);
  Fft3& fft = fft3_for(n);
  std::vector<Complex> spec(fft.spectral_size());
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const double k[3] = {w.kx[ix], w.ky[iy], w.ky[iz]};
        const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        Complex v{0.0, 0.0};
        if (kn > 0.0) {
          const double m = radial(kn);
          if (m != 0.0) {
            v = Complex{0.0, k[axis] / kn * m};
            if (shift != 0.0) v *= std::polar(1.0, shift * h * (k[0] + k[1] + k[2]));
          }
        }
        spec[w.index(ix, iy, iz)] = v;
      }
  std::vector<double> kernel(fft.real_size());
  fft.inverse(spec, kernel);
  // The normalized inverse already carries the (2 pi / L)^3 / (2 pi)^3 and h^3
  // factors: sum |inverse| equals the Riemann sum of |kernel| dx.
  Accumulator acc;
  for (double v : kernel) acc.add(std::abs(v));
  return acc.value();
}

std::vector<double> CInftyResult::successive_changes() const {
  std::vector<double> out;
  for (std::size_t i = 2; i < levels.size(); ++i)
    out.push_back(std::abs(levels[i].extrapolated - levels[i - 1].extrapolated));
  return out;
}

Json CInftyResult::to_json() const {
  Json lv = Json::array();
  for (const auto& l : levels) {
    lv.push_back({{"n", l.n},
                  {"trapezoid", {l.trapezoid[0], l.trapezoid[1], l.trapezoid[2]}},
                  {"midpoint", l.midpoint},
                  {"extrapolated", json_number(l.extrapolated)},
                  {"midpoint_extrapolated", json_number(l.midpoint_extrapolated)}});
  }
  return Json{{"c_infty", c_infty},
              {"error_estimate", error_estimate},
              {"per_axis", {per_axis[0], per_axis[1], per_axis[2]}},
              {"midpoint_value", midpoint_value},
              {"levels", lv}};
}

CInftyResult compute_c_infty(const CutoffSpec& cutoff) {
  cutoff.validate();
  const auto radial = [&cutoff](double r) { return cutoff(r); };
  CInftyResult res;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int lvl = cutoff.levels - 1; lvl >= 0; --lvl) {
    RefinementLevel l;
    l.n = cutoff.resolution >> lvl;
    for (int a = 0; a < 3; ++a) l.trapezoid[a] = riesz_kernel_l1(radial, l.n, cutoff.half_width, a, 0.0);
    l.midpoint = riesz_kernel_l1(radial, l.n, cutoff.half_width, 0, 0.5);
    l.extrapolated = nan;
    l.midpoint_extrapolated = nan;
    if (!res.levels.empty()) {
      const auto& prev = res.levels.back();
      l.extrapolated = richardson(l.trapezoid[0], prev.trapezoid[0]);
      l.midpoint_extrapolated = richardson(l.midpoint, prev.midpoint);
    }
    res.levels.push_back(l);
  }

  const auto& fine = res.levels.back();
  const auto& prev = res.levels[res.levels.size() - 2];
  for (int a = 0; a < 3; ++a) res.per_axis[a] = richardson(fine.trapezoid[a], prev.trapezoid[a]);
  res.c_infty = std::max({res.per_axis[0], res.per_axis[1], res.per_axis[2]});
  res.error_estimate = std::abs(fine.extrapolated - prev.extrapolated);
  res.midpoint_value = fine.midpoint_extrapolated;

  if (res.error_estimate > 10.0 * kCInftyTolerance * res.c_infty) {
    std::ostringstream os;
    os.precision(17);
    os << "C_inf refinement did not converge: " << prev.extrapolated << " (n=" << prev.n << ") vs "
       << fine.extrapolated << " (n=" << fine.n << ")";
    fail(ErrorCode::RefinementFailure, os.str());
  }
  // Radial symmetry: the three axes are permutations of the same sum.
  const double sym_tol = std::max(res.error_estimate, 1e-12 * res.c_infty);
  for (int a = 1; a < 3; ++a)
    require(std::abs(res.per_axis[a] - res.per_axis[0]) <= sym_tol, ErrorCode::InvariantViolation,
            "per-axis Riesz constants disagree beyond the error estimate");
  return res;
}

ConstantsContext::ConstantsContext(double c_infty, double c_infty_error, CutoffSpec cutoff, Json derivation)
    : c_infty_(c_infty), c_infty_error_(c_infty_error), cutoff_(std::move(cutoff)), derivation_(std::move(derivation)) {
  require(std::isfinite(c_infty) && c_infty > 0.0, ErrorCode::InvalidConfig, "c_infty must be positive");
  require(std::isfinite(c_infty_error) && c_infty_error >= 0.0, ErrorCode::InvalidConfig,
          "c_infty_error must be nonnegative");
}

ConstantsContext ConstantsContext::compute(const CutoffSpec& cutoff) {
  const auto r = compute_c_infty(cutoff);
  return ConstantsContext(r.c_infty, r.error_estimate, cutoff, r.to_json());
}

Json ConstantsContext::to_json() const {
  return Json{{"version", kGoldenVersion},
              {"cutoff", cutoff_.to_json()},
              {"c_infty", c_infty_},
              {"c_infty_error", c_infty_error_},
              {"grid",
               {{"domain", "periodic cube [-R, R)^3"},
                {"half_width", cutoff_.half_width},
                {"resolution", cutoff_.resolution},
                {"levels", cutoff_.levels},
                {"quadrature", "trapezoid + Richardson"}}},
              {"derivation", derivation_},
              {"hash", hash()}};
}

std::string ConstantsContext::hash() const {
  const Json core{{"cutoff", cutoff_.to_json()}, {"c_infty", c_infty_}, {"c_infty_error", c_infty_error_}};
  return fnv1a_hex(core.dump());
}

ConstantsContext ConstantsContext::from_json(const Json& j) {
  require(j.is_object(), ErrorCode::InvalidConfig, "constants document must be an object");
  require(j.value("version", 0) == kGoldenVersion, ErrorCode::InvalidConfig, "unsupported constants version");
  require(j.contains("c_infty") && j.contains("c_infty_error") && j.contains("cutoff"), ErrorCode::InvalidConfig,
          "constants document needs cutoff, c_infty and c_infty_error");
  return ConstantsContext(j.at("c_infty").get<double>(), j.at("c_infty_error").get<double>(),
                          CutoffSpec::from_json(j.at("cutoff")), j.value("derivation", Json::object()));
}

ConstantsContext ConstantsContext::load(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open constants file " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("constants file is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::string ConstantsContext::golden_path() { return NSREG_DEFAULT_CONSTANTS; }

ConstantsContext ConstantsContext::golden() { return load(golden_path()); }

}  // namespace nsreg
