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

#include "fields/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "common/error.hpp"

namespace nsreg {

namespace {

// Largest |u| on the outer layer of samples relative to the global maximum.
double boundary_ratio(const GridField& f, double peak) {
  if (peak == 0.0) return 0.0;
  const int n = f.grid.n;
  double m = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const bool edge = i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
        if (edge) m = std::max(m, f.magnitude(f.grid.index(i, j, k)));
      }
  return m / peak;
}

// Pairwise summation keeps the reduction order fixed and the error O(log n).
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

double lp_norm_value(const GridField& field, LebesgueExponent p) {
  const std::size_t n = field.grid.size();
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, field.magnitude(i));
  if (p.is_infinite() || peak == 0.0) return peak;
  const double pv = p.value();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = std::pow(field.magnitude(i) / peak, pv);
  const double h = field.grid.spacing();
  return peak * std::pow(pairwise_sum(terms.data(), n) * h * h * h, 1.0 / pv);
}

NormReport lp_norm(const GridField& field, LebesgueExponent p) {
  NormReport r;
  r.p = p;
  r.value = lp_norm_value(field, p);
  r.quadrature = p.is_infinite() ? "sample-max" : "riemann-sum";
  std::ostringstream os;
  os.precision(3);
  if (field.recipe.is_object() && field.recipe.contains("text")) os << field.recipe.at("text").get<std::string>() << "; ";
  os << "boundary/peak magnitude ratio " << boundary_ratio(field, lp_norm_value(field, LebesgueExponent::infinity()));
  r.tail_note = os.str();
  return r;
}

Json NormReport::to_json() const {
  return Json{{"p", p.to_json()}, {"value", value}, {"quadrature", quadrature}, {"tail_note", tail_note},
              {"pointwise_norm", "euclidean"}};
}

double log_q_pair(double norm_p, double norm_q, LebesgueExponent p, LebesgueExponent q) {
  require(p.value() > 3.0 && q.value() >= 1.0 && q.value() < 3.0, ErrorCode::Domain,
          "norm pair needs p in (3, inf] and q in [1, 3)");
  require(norm_p >= 0.0 && norm_q >= 0.0, ErrorCode::Domain, "norms must be nonnegative");
  if (norm_p == 0.0 || norm_q == 0.0) return -std::numeric_limits<double>::infinity();
  return p.pair_weight_p() * std::log(norm_p) + q.pair_weight_q() * std::log(norm_q);
}

double q_pair(const GridField& field, LebesgueExponent p, LebesgueExponent q) {
  return std::exp(log_q_pair(lp_norm_value(field, p), lp_norm_value(field, q), p, q));
}

}  // namespace nsreg
