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
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "common/error.hpp"
#include "fields/field_io.hpp"
#include "fields/grid_field.hpp"
#include "fields/norms.hpp"
#include "fields/recipe.hpp"
#include "fields/spectral.hpp"

using namespace nsreg;

namespace {
const double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();
LebesgueExponent E(double v) { return std::isinf(v) ? LebesgueExponent::infinity() : LebesgueExponent::any(v); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("recipes parse, print and reject bad input") {
  const auto r = Recipe::parse("gaussian amplitude=2 width=1.5 seed=3 scale=2");
  CHECK(r.sampler == "gaussian");
  CHECK(r.param("amplitude") == 2.0);
  CHECK(r.param("component") == 1.0);  // default
  CHECK(r.seed == 3);
  CHECK(r.scale == 2.0);
  CHECK(Recipe::parse(r.to_text()).to_json() == r.to_json());
  CHECK(Recipe::from_json(r.to_json()).to_text() == r.to_text());
  CHECK_THROWS_AS(Recipe::parse("vortex_ring"), Error);
  CHECK_THROWS_AS(Recipe::parse("gaussian radius=1"), Error);
  CHECK_THROWS_AS(Recipe::parse("gaussian width=abc"), Error);
  CHECK(Recipe::parse("taylor_green").periodic());
  CHECK_FALSE(Recipe::parse("gaussian").solenoidal());
  CHECK(Recipe::parse("curl_bump").solenoidal());
  CHECK(Recipe::parse("curl_bump alpha=2").rescaled(3.0).scale == 3.0);
}

TEST_CASE("box checks name the violated requirement") {
  CHECK_THROWS_AS(sample_analytic(Recipe::parse("taylor_green"), BoxGrid{16, 6.0}), Error);
  CHECK_THROWS_AS(sample_analytic(Recipe::parse("gaussian width=3"), BoxGrid{32, 8.0}), Error);
  CHECK_THROWS_AS(sample_analytic(Recipe::parse("curl_bump alpha=0.25 lambda=1"), BoxGrid{32, 8.0}), Error);
  // Support radius 2 / (alpha lambda) = 0.5 is under-resolved at h = 0.5.
  CHECK_THROWS_AS(sample_analytic(Recipe::parse("curl_bump alpha=4 lambda=1"), BoxGrid{16, 8.0}), Error);
  CHECK_THROWS_AS(BoxGrid::from_json(Json{{"n", 15}, {"length", 1.0}}), Error);
  CHECK_THROWS_AS(BoxGrid::from_json(Json{{"n", 16}, {"length", -1.0}}), Error);
}

TEST_CASE("spectral transforms invert and the projection removes divergence") {
  const BoxGrid g{16, 2 * kPi};
  GridField f = sample_analytic(Recipe::parse("gaussian width=0.8"), BoxGrid{32, 12.0});
  const auto s = to_spectrum(f);
  GridField back = f;
  from_spectrum(s, back);
  double err = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.grid.size(); ++i) err = std::max(err, std::abs(back.u[c][i] - f.u[c][i]));
  CHECK(err < 1e-14);
  CHECK(divergence_residual(f) > 1e-3);
  project_solenoidal(f);
  CHECK(f.solenoidal);
  CHECK(f.raw_divergence > 1e-3);
  CHECK(divergence_residual(f) < 1e-14);
  GridField twice = f;
  project_solenoidal(twice);
  double diff = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < f.grid.size(); ++i) diff = std::max(diff, std::abs(twice.u[c][i] - f.u[c][i]));
  CHECK(diff < 1e-15);
  (void)g;
}

TEST_CASE("Gaussian norms match closed-form integrals") {
  // ||A e^{-|x|^2/w^2}||_p = A (pi w^2 / p)^{3/(2p)}.
  const double a = 1.7, w = 1.2;
  const auto f = sample_analytic(Recipe::parse("gaussian amplitude=1.7 width=1.2"), BoxGrid{64, 16.0});
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0}) {
    const double exact = a * std::pow(kPi * w * w / p, 1.5 / p);
    CHECK(rel(lp_norm_value(f, E(p)), exact) < 1e-12);
  }
  // |u|^12 is narrow enough at h = 0.25 for the trapezoid error to show.
  CHECK(rel(lp_norm_value(f, E(12.0)), a * std::pow(kPi * w * w / 12.0, 1.5 / 12.0)) < 1e-7);
  CHECK(lp_norm_value(f, E(kInf)) == doctest::Approx(a).epsilon(1e-15));
  CHECK(lp_norm(f, E(2.0)).quadrature.size() > 0);
}

TEST_CASE("vortex and Taylor-Green L2 norms match closed forms") {
  const double w = 1.0, amp = 0.5;
  const auto v = sample_analytic(Recipe::parse("gaussian_vortex amplitude=0.5 width=1"), BoxGrid{64, 14.0});
  const double a = 2.0 / (w * w);
  const double l2sq = amp * amp / (w * w) * std::pow(kPi, 1.5) * std::pow(a, -2.5);
  CHECK(rel(lp_norm_value(v, E(2.0)), std::sqrt(l2sq)) < 1e-9);
  CHECK(v.raw_divergence < 1e-12);

  const auto tg = sample_analytic(Recipe::parse("taylor_green amplitude=2"), BoxGrid{16, 2 * kPi});
  CHECK(tg.periodic);
  CHECK(rel(lp_norm_value(tg, E(2.0)), 2.0 * std::sqrt(std::pow(2 * kPi, 3) / 4.0)) < 1e-13);
  CHECK(lp_norm_value(tg, E(kInf)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("random solenoidal fields: rms, divergence and resolution independence") {
  const auto r = Recipe::parse("random_solenoidal amplitude=0.3 kmax=3 seed=11");
  const auto a = sample_analytic(r, BoxGrid{16, 2 * kPi});
  const auto b = sample_analytic(r, BoxGrid{32, 2 * kPi});
  const double vol = std::pow(2 * kPi, 3);
  CHECK(rel(lp_norm_value(a, E(2.0)) / std::sqrt(vol), 0.3) < 1e-12);
  CHECK(divergence_residual(a) < 1e-13);
  double diff = 0.0;
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        for (int c = 0; c < 3; ++c)
          diff = std::max(diff, std::abs(a.u[c][a.grid.index(i, j, k)] - b.u[c][b.grid.index(2 * i, 2 * j, 2 * k)]));
  CHECK(diff < 1e-13);
  const auto other = sample_analytic(Recipe::parse("random_solenoidal amplitude=0.3 kmax=3 seed=12"), BoxGrid{16, 2 * kPi});
  CHECK(std::abs(other.u[0][5] - a.u[0][5]) > 1e-6);
}

TEST_CASE("the curl bump converges under refinement and stays near its support") {
  // Analytically divergence free; the samples are only so up to resolution,
  // and the projection that fixes that leaks a little outside |x| <= 2.
  const auto f64 = sample_analytic(Recipe::parse("curl_bump alpha=1 lambda=1"), BoxGrid{64, 8.0});
  const auto f128 = sample_analytic(Recipe::parse("curl_bump alpha=1 lambda=1"), BoxGrid{128, 8.0});
  CHECK(f128.raw_divergence < f64.raw_divergence);
  CHECK(f128.raw_divergence < 1e-3);
  CHECK(f128.solenoidal);
  CHECK(rel(lp_norm_value(f64, E(2.0)), lp_norm_value(f128, E(2.0))) < 1e-4);
  CHECK(rel(lp_norm_value(f64, E(6.0)), lp_norm_value(f128, E(6.0))) < 1e-4);
  double outside = 0.0, peak = 0.0;
  const auto& g = f128.grid;
  for (int k = 0; k < g.n; ++k)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
        const double m = f128.magnitude(g.index(i, j, k));
        peak = std::max(peak, m);
        if (x * x + y * y + z * z > 4.5) outside = std::max(outside, m);
      }
  CHECK(outside < 1e-3 * peak);
  const auto direct = curl_bump(1.0, 1.0, Smoothstep{}, BoxGrid{64, 8.0});
  CHECK(direct.u[2][1000] == f64.u[2][1000]);
}

TEST_CASE("rescaling: ||u_l||_p = l^(1-3/p) ||u||_p and Q^p_q is invariant") {
  const auto r = Recipe::parse("gaussian_vortex amplitude=1 width=1");
  const BoxGrid g{64, 12.0};
  const auto u = sample_analytic(r, g);
  for (double lambda : {0.1, 0.5, 2.0, 10.0}) {
    const auto ul = rescale(r, g, lambda);
    CHECK(ul.grid.length == doctest::Approx(g.length / lambda));
    for (double p : {1.5, 2.0, 6.0, kInf}) {
      const double expect = std::pow(lambda, 1.0 - (std::isinf(p) ? 0.0 : 3.0 / p)) * lp_norm_value(u, E(p));
      CHECK(rel(lp_norm_value(ul, E(p)), expect) < 1e-12);
    }
    CHECK(std::abs(std::log(q_pair(ul, E(6.0), E(2.0))) - std::log(q_pair(u, E(6.0), E(2.0)))) < 1e-10);
  }
  CHECK(log_q_pair(0.0, 1.0, E(6.0), E(2.0)) == -kInf);
}

TEST_CASE("binary field files round-trip and reject corruption") {
  auto f = sample_analytic(Recipe::parse("taylor_green amplitude=0.5"), BoxGrid{8, 2 * kPi});
  const std::string path = "test_fields_roundtrip.bin";
  write_field(path, f, 1.25);
  const auto s = read_field(path);
  CHECK(s.time == 1.25);
  CHECK(s.field.grid == f.grid);
  CHECK(s.field.solenoidal == f.solenoidal);
  CHECK(s.field.periodic);
  CHECK(s.field.recipe == f.recipe);
  for (int c = 0; c < 3; ++c) CHECK(s.field.u[c] == f.u[c]);
  {
    std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
    io.write("XXXX", 4);
  }
  CHECK_THROWS_AS(read_field(path), Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_field("missing_field_file.bin"), Error);
}
