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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "common/error.hpp"
#include "common/random.hpp"
#include "constants/closed_form.hpp"
#include "constants/cutoff.hpp"
#include "constants/lebesgue.hpp"
#include "constants/riesz_constant.hpp"
#include "oracles.hpp"

using namespace nsreg;
namespace cf = nsreg::constants;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::numbers::pi;
LebesgueExponent E(double v) { return std::isinf(v) ? LebesgueExponent::infinity() : LebesgueExponent::any(v); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("exponents validate their role and round-trip through JSON") {
  CHECK_THROWS_AS(LebesgueExponent::p_role(3.0), Error);
  CHECK_THROWS_AS(LebesgueExponent::q_role(3.0), Error);
  CHECK_THROWS_AS(LebesgueExponent::any(0.5), Error);
  CHECK(LebesgueExponent::p_role(kInf).is_infinite());
  CHECK(E(1.0).conjugate().is_infinite());
  CHECK(E(kInf).conjugate().value() == 1.0);
  CHECK(E(4.0).conjugate().value() == doctest::Approx(4.0 / 3.0));
  CHECK(E(kInf).pair_weight_p() == 2.0);
  CHECK(E(6.0).pair_weight_p() == doctest::Approx(4.0));
  CHECK(E(2.0).pair_weight_q() == doctest::Approx(4.0));
  CHECK(E(kInf).to_string() == "inf");
  CHECK(E(2.9).to_string() == "2.9");
  CHECK(LebesgueExponent::from_json(Json("inf")).is_infinite());
  CHECK(LebesgueExponent::from_json(E(2.5).to_json()).value() == 2.5);
}

TEST_CASE("C_0 bounds the heat kernel norm and is attained at the endpoints") {
  // Young: ||G(1) * f||_p <= ||G(1)||_r ||f||_q with 1 - 1/r = 1/q - 1/p.
  const double pairs[][2] = {{kInf, 1.0}, {6.0, 2.0}, {4.0, 1.5}, {12.0, 2.5}, {kInf, 2.0}};
  for (const auto& pq : pairs) {
    const double d = 1.0 / pq[1] - (std::isinf(pq[0]) ? 0.0 : 1.0 / pq[0]);
    const double r = d >= 1.0 ? kInf : 1.0 / (1.0 - d);
    const double oracle = oracle::heat_lr(1.0, r);
    CHECK(cf::c0(E(pq[0]), E(pq[1])) >= oracle * (1.0 - 1e-10));
    CHECK(cf::c0(E(pq[0]), E(pq[1])) == doctest::Approx(std::pow(4.0 * kPi, -1.5 * d)).epsilon(1e-14));
  }
  CHECK(rel(cf::c0(E(kInf), E(1.0)), oracle::heat_lr(1.0, kInf)) < 1e-14);
  CHECK_THROWS_AS(cf::c0(E(2.0), E(2.0)), Error);
}

TEST_CASE("C_3 interpolates the sup and L1 norms of the gradient kernel") {
  const double sup = oracle::gradient_lr(1.0, kInf);
  const double l1 = oracle::gradient_lr(1.0, 1.0);
  CHECK(rel(l1, 1.0 / std::sqrt(kPi)) < 1e-9);  // exact value pi^{-1/2}
  CHECK(rel(cf::c3(E(kInf), E(1.0)), sup) < 1e-12);
  CHECK(rel(cf::c1(E(1.0)), l1) < 1e-9);
  const double pairs[][2] = {{6.0, 3.0}, {4.0, 2.0}, {kInf, 2.0}, {12.0, 1.5}, {5.0, 1.0}};
  for (const auto& pq : pairs) {
    const double d = 1.0 / pq[1] - (std::isinf(pq[0]) ? 0.0 : 1.0 / pq[0]);
    const double interp = std::pow(sup, d) * std::pow(l1, 1.0 - d);
    CHECK(rel(cf::c3(E(pq[0]), E(pq[1])), interp) < 1e-9);
    // Hoelder interpolation is an upper bound for the true L^r norm.
    const double r = d >= 1.0 ? kInf : 1.0 / (1.0 - d);
    CHECK(cf::c3(E(pq[0]), E(pq[1])) >= oracle::gradient_lr(1.0, r) * (1.0 - 1e-9));
  }
  // C_1(p) = C_3(p, 1) and C_2(p) = C_3(p, p').
  CHECK(rel(cf::c1(E(6.0)), cf::c3(E(6.0), E(1.0))) < 1e-14);
  CHECK(rel(cf::c2(E(6.0)), cf::c3(E(6.0), E(1.2))) < 1e-13);
  CHECK(cf::c3(E(6.0), E(3.0)) == doctest::Approx(0.2863).epsilon(1e-3));
}

TEST_CASE("C_3(p, p/2) has the limit pi^(-1/2) at p = inf") {
  CHECK(std::exp(cf::log_c3_half(E(kInf))) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
  CHECK(rel(std::exp(cf::log_c3_half(E(1e6))), 1.0 / std::sqrt(kPi)) < 1e-5);
  CHECK(rel(std::exp(cf::log_c3_half(E(6.0))), cf::c3(E(6.0), E(3.0))) < 1e-14);
}

TEST_CASE("Riesz powers follow their branches") {
  const double c = 1.6591972949343248;
  CHECK(cf::c4(E(2.0), c) == 1.0);
  CHECK(cf::c4(E(4.0), c) == doctest::Approx(c));
  CHECK(cf::c4(E(4.0 / 3.0), c) == doctest::Approx(c));
  CHECK(cf::riesz_power(E(kInf), c) == doctest::Approx(c * c));
  // C_5 jumps at q = 2 for p > 2: the middle branch gives C^(2-4/p), the last C^0.
  CHECK(cf::c5(E(6.0), E(1.999), c) == doctest::Approx(std::pow(c, 2.0 - 4.0 / 6.0)));
  CHECK(cf::c5(E(6.0), E(2.0), c) == 1.0);
  CHECK(cf::c5(E(1.8), E(1.5), c) == doctest::Approx(std::pow(c, 4.0 / 1.8 - 2.0)));
  CHECK(cf::c4(E(4.0), 0.0) == 0.0);
  CHECK(cf::riesz_power(E(2.0), 0.0) == 1.0);
}

TEST_CASE("K_0: assembled and expanded closed forms agree") {
  NormalStream rng(7);
  for (int i = 0; i < 200; ++i) {
    const double p = 3.0 + std::exp(4.0 * rng.uniform() - 3.0);
    const double q = 1.0 + 1.99 * rng.uniform();
    const double c = 0.5 + 3.0 * rng.uniform();
    const double a = cf::log_k0(E(p), E(q), c), b = cf::log_k0_expanded(E(p), E(q), c);
    CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)));
  }
  CHECK(std::abs(cf::log_k0(E(kInf), E(2.0), 1.6) - cf::log_k0_expanded(E(kInf), E(2.0), 1.6)) < 1e-12);
}

TEST_CASE("L3 smallness threshold matches the displayed inequality") {
  const double c = 1.6591972949343248;
  for (double p : {3.5, 4.0, 6.0, 24.0, 100.0}) {
    const double direct = std::exp(1.0 / (2 * p)) * std::pow(kPi, (2 * p - 1) / (2 * p)) * (p - 3) /
                          (std::pow(2.0, 2.0 - 1.0 / (2 * p)) * (1 + 3 * std::pow(c, (2 * p - 4) / p)) * p);
    CHECK(rel(cf::idc3p_threshold(E(p), c), direct) < 1e-13);
  }
  // p = inf: e^0 pi^1 / (4 (1 + 3 C^2)).
  CHECK(rel(cf::idc3p_threshold(E(kInf), c), kPi / (4.0 * (1.0 + 3.0 * c * c))) < 1e-14);
  const std::vector<LebesgueExponent> grid{E(4.0), E(8.0), E(24.0), E(64.0)};
  const auto best = cf::best_idc3p_threshold(grid, c);
  for (const auto& p : grid) CHECK(best.threshold >= cf::idc3p_threshold(p, c));
}

TEST_CASE("smoothstep cutoff is 1 inside 1/2, 0 outside 1, monotone") {
  CutoffSpec psi;
  CHECK(psi(0.0) == 1.0);
  CHECK(psi(0.5) == 1.0);
  CHECK(psi(1.0) == 0.0);
  CHECK(psi(3.0) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = psi(0.5 + 0.005 * i);
    CHECK(v <= prev);
    prev = v;
  }
  Smoothstep s;
  CHECK(s(0.5) == doctest::Approx(0.5));
  const double h = 1e-6;
  CHECK(s.derivative(0.3) == doctest::Approx((s(0.3 + h) - s(0.3 - h)) / (2 * h)).epsilon(1e-6));
  CutoffSpec bad;
  bad.resolution = 100;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(CutoffSpec::from_json(psi.to_json()).to_json() == psi.to_json());
}

TEST_CASE("Riesz kernel L1 sums match an independent prototype") {
  // Values from a separate NumPy evaluation of the same periodic sum.
  CutoffSpec psi;
  auto radial = [&](double r) { return psi(r); };
  CHECK(riesz_kernel_l1(radial, 32, 8.0, 0) == doctest::Approx(1.6533).epsilon(1e-4));
  CHECK(riesz_kernel_l1(radial, 64, 8.0, 0) == doctest::Approx(1.65774).epsilon(1e-5));
  CHECK(riesz_kernel_l1(radial, 64, 8.0, 2) == doctest::Approx(riesz_kernel_l1(radial, 64, 8.0, 0)).epsilon(1e-13));
}

TEST_CASE("C_inf refinement converges and the per-axis constants coincide") {
  const auto res = compute_c_infty(CutoffSpec{});
  CHECK(res.c_infty == doctest::Approx(1.6591973).epsilon(1e-6));
  const auto changes = res.successive_changes();
  REQUIRE(changes.size() == 2);
  CHECK(changes[1] < changes[0]);
  CHECK(changes.back() <= kCInftyTolerance * res.c_infty);
  CHECK(res.per_axis[0] == res.per_axis[1]);
  CHECK(res.per_axis[1] == res.per_axis[2]);
  CHECK(std::abs(res.midpoint_value - res.c_infty) < 1e-6);
}

TEST_CASE("constants context: golden file, hashing and JSON round trip") {
  const auto golden = ConstantsContext::golden();
  CHECK(golden.c_infty() == doctest::Approx(1.6591973).epsilon(1e-6));
  const auto again = ConstantsContext::from_json(golden.to_json());
  CHECK(again.hash() == golden.hash());
  CHECK(again.c_infty() == golden.c_infty());
  const ConstantsContext other(golden.c_infty() * (1 + 1e-12), golden.c_infty_error(), golden.cutoff());
  CHECK(other.hash() != golden.hash());
  CHECK(golden.hash().size() == 16);
  CHECK_THROWS_AS(ConstantsContext::load("/nonexistent/constants.json"), Error);
}
