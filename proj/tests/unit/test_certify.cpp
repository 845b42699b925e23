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

#include "certify/certificate.hpp"
#include "certify/horizons.hpp"
#include "common/error.hpp"
#include "common/random.hpp"
#include "constants/closed_form.hpp"
#include "fields/norms.hpp"
#include "fields/recipe.hpp"

using namespace nsreg;
namespace cf = nsreg::constants;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
LebesgueExponent E(double v) { return std::isinf(v) ? LebesgueExponent::infinity() : LebesgueExponent::any(v); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// A(p) assembled by hand from C_3(p, p/2) and C_inf.
double factor_a(double p, const ConstantsContext& ctx) {
  const double c = ctx.c_infty();
  if (std::isinf(p)) return 8.0 * std::exp(cf::log_c3_half(E(kInf))) * (1.0 + 3.0 * c * c);
  return 8.0 * p * cf::c3(E(p), E(p / 2.0)) * (1.0 + 3.0 * std::pow(c, (2.0 * p - 4.0) / p)) / (p - 3.0);
}
double weight_p(double p) { return std::isinf(p) ? 2.0 : 2.0 * p / (p - 3.0); }
double rate(double p) { return std::isinf(p) ? 0.5 : (p - 3.0) / (2.0 * p); }
}  // namespace

TEST_CASE("time markers follow their closed forms") {
  const auto ctx = ConstantsContext::golden();
  for (double p : {3.5, 4.0, 6.0, 12.0, kInf}) {
    const double a = factor_a(p, ctx);
    CHECK(rel(*t_lower(E(p), 0.7, ctx), std::pow(a * 0.7, -weight_p(p))) < 1e-12);
    for (double q : {1.0, 1.5, 2.0, 2.9}) {
      const double expect = std::pow(a * cf::c0(E(p), E(q)) * 0.3, 2.0 * q / (3.0 - q));
      CHECK(rel(*t_upper(E(p), E(q), 0.3, ctx), expect) < 1e-12);
    }
    CHECK(rel(blowup_constant(E(p), ctx), 1.0 / a) < 1e-12);
  }
}

TEST_CASE("time markers scale with the norms") {
  const auto ctx = ConstantsContext::golden();
  // Doubling ||u||_6 divides T_l by 2^4; at p = inf by 2^2.
  CHECK(rel(*t_lower(E(6), 2.0, ctx) / *t_lower(E(6), 1.0, ctx), 1.0 / 16.0) < 1e-13);
  CHECK(rel(*t_lower(E(kInf), 2.0, ctx) / *t_lower(E(kInf), 1.0, ctx), 0.25) < 1e-13);
  // T_r is linear in ||u||_1 and quartic in ||u||_2.
  CHECK(rel(*t_upper(E(6), E(1), 3.0, ctx) / *t_upper(E(6), E(1), 1.0, ctx), 3.0) < 1e-13);
  CHECK(rel(*t_upper(E(6), E(2), 0.5, ctx) / *t_upper(E(6), E(2), 1.0, ctx), 1.0 / 16.0) < 1e-13);
  // Large p approaches the p = inf marker.
  CHECK(rel(*t_lower(E(1e7), 0.4, ctx), *t_lower(E(kInf), 0.4, ctx)) < 1e-5);
}

TEST_CASE("time markers reject bad input and are vacuous for zero data") {
  const auto ctx = ConstantsContext::golden();
  CHECK_FALSE(t_lower(E(6), 0.0, ctx).has_value());
  CHECK_FALSE(t_upper(E(6), E(2), 0.0, ctx).has_value());
  CHECK_FALSE(picard_horizon(E(6), 0.0, 0.5, ctx).has_value());
  CHECK_THROWS_AS(t_lower(E(3.0), 1.0, ctx), Error);
  CHECK_THROWS_AS(t_lower(E(6), -1.0, ctx), Error);
  CHECK_THROWS_AS(t_upper(E(6), E(3.0), 1.0, ctx), Error);
  CHECK_THROWS_AS(t_upper(E(6), E(kInf), 1.0, ctx), Error);
  CHECK_THROWS_AS(t_lower(E(6), std::nan(""), ctx), Error);
  CHECK_THROWS_AS(picard_horizon(E(6), 1.0, 1.0, ctx), Error);
  CHECK_THROWS_AS(log_t_lower(E(6), 0.0, ctx), Error);
}

TEST_CASE("the contraction horizon is T_l shrunk by theta") {
  const auto ctx = ConstantsContext::golden();
  for (double p : {4.0, 6.0, kInf})
    for (double theta : {0.1, 2.0 / 3.0, 0.9})
      CHECK(rel(*picard_horizon(E(p), 1.3, theta, ctx), *t_lower(E(p), 1.3, ctx) * std::pow(theta, weight_p(p))) <
            1e-12);
}

TEST_CASE("brackets reproduce from their stored inputs") {
  const auto ctx = ConstantsContext::golden();
  auto b = TimeBracket::make(E(6), E(2), 0.8, 0.2, ctx);
  CHECK(b.reproduces());
  b.norm_q *= 1.0 + 1e-9;
  CHECK_FALSE(b.reproduces());
  auto z = TimeBracket::make(E(kInf), E(1), 0.0, 0.0, ctx);
  CHECK(z.reproduces());
  CHECK(z.to_json().at("t_l") == "vacuous");
}

TEST_CASE("decay envelope") {
  const auto ctx = ConstantsContext::golden();
  const double nq = 0.05;
  for (double p : {4.0, 6.0, kInf})
    for (double q : {1.0, 2.0, 2.5}) {
      CAPTURE(p);
      CAPTURE(q);
      const double tr = *t_upper(E(p), E(q), nq, ctx);
      CHECK_THROWS_AS(decay_envelope(tr, E(p), E(q), nq, ctx), Error);
      CHECK_THROWS_AS(decay_envelope(0.5 * tr, E(p), E(q), nq, ctx), Error);
      // Direct form 2 (1 - sqrt(1 - x)) / (A t^rate), x = (T_r/t)^((3-q)/(2q)).
      const double a = factor_a(p, ctx);
      const double k = (3.0 - q) / (2.0 * q);
      for (double s : {1.5, 4.0, 30.0}) {
        const double t = s * tr;
        const double x = std::pow(tr / t, k);
        const double direct = 2.0 * (1.0 - std::sqrt(1.0 - x)) / (a * std::pow(t, rate(p)));
        CHECK(rel(decay_envelope(t, E(p), E(q), nq, ctx), direct) < 1e-9);
      }
      // Monotone decreasing, and far above T_r a power law in t.
      double prev = kInf;
      for (double s = 1.01; s < 1e4; s *= 1.7) {
        const double e = decay_envelope(s * tr, E(p), E(q), nq, ctx);
        CHECK(e < prev);
        prev = e;
      }
      const double far = 1e8 * tr;
      const double ratio = decay_envelope(10 * far, E(p), E(q), nq, ctx) / decay_envelope(far, E(p), E(q), nq, ctx);
      CHECK(rel(ratio, std::pow(10.0, -(k + rate(p)))) < 0.05);
    }
  CHECK(decay_envelope(1.0, E(6), E(2), 0.0, ctx) == 0.0);
}

TEST_CASE("blow-up floor") {
  const auto ctx = ConstantsContext::golden();
  for (double p : {4.0, 6.0, kInf}) {
    const double cb = blowup_constant(E(p), ctx);
    CHECK(rel(blowup_floor(0.0, E(p), 2.0, ctx), cb * std::pow(2.0, -rate(p))) < 1e-13);
    CHECK(blowup_floor(1.9, E(p), 2.0, ctx) > blowup_floor(1.0, E(p), 2.0, ctx));
    CHECK_THROWS_AS(blowup_floor(2.0, E(p), 2.0, ctx), Error);
    CHECK_THROWS_AS(blowup_floor(-0.1, E(p), 2.0, ctx), Error);
    CHECK_THROWS_AS(blowup_floor(0.0, E(p), kInf, ctx), Error);
  }
}

TEST_CASE("L^3 smallness is a strict inequality") {
  const auto ctx = ConstantsContext::golden();
  const auto grid = SearchConfig::standard().l3_p_grid;
  const double th = check_l3_smallness(0.0, grid, ctx).threshold;
  CHECK(check_l3_smallness(0.0, grid, ctx).success);
  CHECK(check_l3_smallness(std::nextafter(th, 0.0), grid, ctx).success);
  const auto at = check_l3_smallness(th, grid, ctx);
  CHECK_FALSE(at.success);
  CHECK(at.boundary);
  CHECK_FALSE(check_l3_smallness(2.0 * th, grid, ctx).boundary);
  CHECK_THROWS_AS(check_l3_smallness(1.0, {}, ctx), Error);
  CHECK_THROWS_AS(check_l3_smallness(1.0, {E(kInf)}, ctx), Error);
}

TEST_CASE("the two norm-pair routes agree on random norms") {
  const auto ctx = ConstantsContext::golden();
  const auto search = SearchConfig::standard();
  NormalStream rng(7);
  int passes = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<LebesgueExponent, double>> norms;
    for (const auto& p : search.p_grid) norms.emplace_back(p, std::exp(6.0 * rng()));
    for (const auto& q : search.q_grid) norms.emplace_back(q, std::exp(6.0 * rng()));
    const auto check = check_norm_pair_from_norms(norms, search, ctx);
    for (const auto& pt : check.points) {
      CHECK(pt.pass_q == pt.pass_t);
      passes += pt.pass_q;
      ++total;
    }
    REQUIRE(check.best.has_value());
    for (const auto& pt : check.points) CHECK(pt.log_margin <= check.best->log_margin);
  }
  // Both outcomes occur, so the agreement is not trivial.
  CHECK(passes > 0);
  CHECK(passes < total);
  CHECK_THROWS_AS(check_norm_pair_from_norms({{E(6), 1.0}}, search, ctx), Error);
}

TEST_CASE("search config round-trips and validates") {
  const auto s = SearchConfig::standard();
  CHECK(s.p_grid.size() == 8);
  CHECK(s.l3_p_grid.size() == 7);
  CHECK(SearchConfig::from_json(s.to_json()).to_json() == s.to_json());
  const auto t = SearchConfig::from_json(Json{{"p_grid", Json::array({6, "inf"})}});
  CHECK(t.l3_p_grid.size() == 1);
  CHECK_THROWS_AS(SearchConfig::from_json(Json{{"p_grid", Json::array()}}), Error);
  CHECK_THROWS_AS(SearchConfig::from_json(Json{{"l3_p_grid", Json::array({"inf"})}}), Error);
  CHECK_THROWS_AS(SearchConfig::from_json(Json{{"q_grid", Json::array({3})}}), Error);
}

TEST_CASE("certificates: zero data, determinism and the verdict ladder") {
  const auto ctx = ConstantsContext::golden();
  const auto search = SearchConfig::standard();
  const BoxGrid grid{32, 16.0};

  const auto zero = make_certificate(sample_analytic(Recipe::parse("zero"), grid), search, ctx);
  CHECK(zero.verdict.type == VerdictType::GlobalByL3Smallness);
  CHECK_FALSE(zero.t_l_star.has_value());

  const auto big = sample_analytic(Recipe::parse("gaussian_vortex amplitude=20 width=1"), grid);
  const auto c1 = make_certificate(big, search, ctx);
  const auto c2 = make_certificate(big, search, ctx);
  CHECK(c1.to_json(false).dump() == c2.to_json(false).dump());
  CHECK_FALSE(c1.to_json(false).contains("timestamp"));
  CHECK(c1.verdict.type == VerdictType::UndeterminedBracket);
  CHECK_FALSE(c1.l3.success);
  CHECK_FALSE(c1.pair.success);
  CHECK(c1.constants_hash == ctx.hash());
}

TEST_CASE("the example family certifies by norm pair and is scale invariant") {
  const auto ctx = ConstantsContext::golden();
  const auto search = SearchConfig::standard();
  const auto recipe = Recipe::parse("curl_bump alpha=62 lambda=1");
  const BoxGrid grid{64, 7.5 / 62.0};
  const auto base = make_certificate(sample_analytic(recipe, grid), search, ctx);
  CHECK(base.verdict.type == VerdictType::GlobalByNormPair);
  REQUIRE(base.pair.best.has_value());
  const double logq = base.pair.best->log_q;
  for (double lambda : {0.5, 4.0}) {
    CAPTURE(lambda);
    const auto c = make_certificate(rescale(recipe, grid, lambda), search, ctx);
    CHECK(c.verdict.type == base.verdict.type);
    CHECK(std::abs(c.pair.best->log_q - logq) < 1e-8);
    CHECK(rel(*c.t_l_star, *base.t_l_star / (lambda * lambda)) < 1e-8);
    CHECK(rel(*c.t_r_star, *base.t_r_star / (lambda * lambda)) < 1e-8);
  }
}
