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

#include "heatflow/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "common/error.hpp"

namespace nsreg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
  require(std::isfinite(t) && t > 0.0, ErrorCode::Domain, "kernel time must be positive");
}

// Composite Gauss-Legendre rule on [-a, a]; panel edges include 0, where the
// kink of |x_j| sits.
struct Rule1d {
  std::vector<double> x, w;
};

Rule1d composite_rule(double a, int panels) {
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  Rule1d r;
  const double width = 2.0 * a / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      if (abscissa[i] == 0.0) {
        r.x.push_back(mid);
        r.w.push_back(weights[i] * half);
        continue;
      }
      for (double s : {-1.0, 1.0}) {
        r.x.push_back(mid + s * abscissa[i] * half);
        r.w.push_back(weights[i] * half);
      }
    }
  }
  return r;
}

}  // namespace

void KernelId::validate() const {
  auto ok = [](int i) { return i >= 1 && i <= 3; };
  switch (kind) {
    case KernelKind::G:
      break;
    case KernelKind::Gj:
      require(ok(j), ErrorCode::Domain, "gradient kernel index must be 1, 2 or 3");
      break;
    case KernelKind::Gklj:
      require(ok(k) && ok(l) && ok(j), ErrorCode::Domain, "Riesz-gradient indices must be 1, 2 or 3");
      break;
  }
}

std::string KernelId::name() const {
  switch (kind) {
    case KernelKind::G:
      return "G";
    case KernelKind::Gj:
      return "G_" + std::to_string(j);
    case KernelKind::Gklj:
      return "G_" + std::to_string(k) + std::to_string(l) + std::to_string(j);
  }
  return "?";
}

double kernel_value(const KernelId& kernel, double t, const std::array<double, 3>& x) {
  kernel.validate();
  require_time(t);
  require(kernel.kind != KernelKind::Gklj, ErrorCode::Unsupported,
          "G_klj has no closed form; apply it spectrally with apply_semigroup");
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double g = std::pow(4.0 * kPi * t, -1.5) * std::exp(-r2 / (4.0 * t));
  if (kernel.kind == KernelKind::G) return g;
  return -x[kernel.j - 1] / (2.0 * t) * g;
}

double kernel_l1(const KernelId& kernel, double t) {
  kernel.validate();
  require_time(t);
  require(kernel.kind != KernelKind::Gklj, ErrorCode::Unsupported, "kernel_l1 is defined for G and G_j only");
  // erfc(6) ~ 2e-17: the truncated mass is far below double resolution.
  const Rule1d rule = composite_rule(12.0 * std::sqrt(t), 8);
  const std::size_t m = rule.x.size();
  double total = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    double plane = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      double line = 0.0;
      for (std::size_t c = 0; c < m; ++c)
        line += rule.w[c] * std::abs(kernel_value(kernel, t, {rule.x[c], rule.x[b], rule.x[a]}));
      plane += rule.w[b] * line;
    }
    total += rule.w[a] * plane;
  }
  return total;
}

double kernel_sup(const KernelId& kernel, double t) {
  kernel.validate();
  require_time(t);
  require(kernel.kind != KernelKind::Gklj, ErrorCode::Unsupported, "kernel_sup is defined for G and G_j only");
  if (kernel.kind == KernelKind::G) return kernel_value(kernel, t, {0.0, 0.0, 0.0});
  // |G_j| is maximal on the x_j axis; maximize along it.
  auto neg = [&](double r) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    x[kernel.j - 1] = r;
    return -std::abs(kernel_value(kernel, t, x));
  };
  const auto best = boost::math::tools::brent_find_minima(neg, 0.0, 8.0 * std::sqrt(t), 52);
  return -best.second;
}

}  // namespace nsreg
