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

#include "fields/recipe.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "common/error.hpp"
#include "common/random.hpp"

namespace nsreg {

namespace {

using Defaults = std::map<std::string, double>;

const std::map<std::string, Defaults>& registry() {
  static const std::map<std::string, Defaults> r = {
      {"zero", {}},
      {"gaussian", {{"amplitude", 1.0}, {"width", 1.0}, {"component", 1.0}}},
      {"gaussian_vortex", {{"amplitude", 1.0}, {"width", 1.0}}},
      {"taylor_green", {{"amplitude", 1.0}, {"period", 2.0 * std::numbers::pi}}},
      {"random_solenoidal", {{"amplitude", 1.0}, {"kmax", 4.0}, {"period", 2.0 * std::numbers::pi}}},
      {"curl_bump", {{"alpha", 1.0}, {"lambda", 1.0}, {"sharpness", 1.0}}},
  };
  return r;
}

// Gaussian tails below this fraction of the peak count as zero.
constexpr double kTailFloor = 1e-12;

double parse_number(std::string_view s, std::string_view key) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  require(ec == std::errc() && ptr == end, ErrorCode::InvalidConfig,
          "recipe value for '" + std::string(key) + "' is not a number: " + std::string(s));
  return v;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// psi(y) of the example family at alpha = lambda = 1.
std::array<double, 3> psi_unit(double y1, double y2, double y3, const Smoothstep& s) {
  const double r = std::sqrt(y1 * y1 + y2 * y2 + y3 * y3);
  if (r <= 1.0 || r >= 2.0) return {0.0, 0.0, 0.0};
  // d_i phi = -S'(2 - r) y_i / r
  const double g = -s.derivative(2.0 - r) / r;
  return {g * y3, -g * y3, g * (y2 - y1)};
}

void sample_random_solenoidal(const Recipe& r, const BoxGrid& grid, GridField& f) {
  const int kmax = static_cast<int>(std::lround(r.param("kmax")));
  const double period = r.param("period");
  const int n = grid.n;
  require(2 * kmax + 2 <= n, ErrorCode::Domain, "random_solenoidal: kmax too large for the grid");
  const double dk = 2.0 * std::numbers::pi / period;
  NormalStream normal(r.seed);
  const Wavenumbers w(n, grid.length);
  Spectrum3 s;
  for (auto& c : s) c.assign(static_cast<std::size_t>(n) * n * w.nx, Complex{});
  double energy = 0.0;
  auto slot = [n](int m) { return m >= 0 ? m : m + n; };
  // Canonical half space: first nonzero of (m3, m2, m1) positive. Each mode and
  // its mirror are drawn together so the stream does not depend on n.
  for (int m3 = 0; m3 <= kmax; ++m3)
    for (int m2 = -kmax; m2 <= kmax; ++m2)
      for (int m1 = -kmax; m1 <= kmax; ++m1) {
        if (m3 == 0 && (m2 < 0 || (m2 == 0 && m1 <= 0))) continue;
        const int mm = m1 * m1 + m2 * m2 + m3 * m3;
        if (mm > kmax * kmax) continue;
        Complex a[3];
        for (auto& ac : a) {
          const double re = normal();
          const double im = normal();
          ac = Complex{re, im} / static_cast<double>(mm);
        }
        const double k[3] = {dk * m1, dk * m2, dk * m3};
        // u_hat = i k x a_hat
        Complex u[3] = {Complex{0, 1} * (k[1] * a[2] - k[2] * a[1]),
                        Complex{0, 1} * (k[2] * a[0] - k[0] * a[2]),
                        Complex{0, 1} * (k[0] * a[1] - k[1] * a[0])};
        // Nodes start at -period/2, which multiplies each mode by (-1)^(m1+m2+m3).
        const double sign = ((m1 + m2 + m3) % 2 == 0) ? 1.0 : -1.0;
        const double nn = static_cast<double>(grid.size());
        for (int c = 0; c < 3; ++c) {
          energy += 2.0 * std::norm(u[c]);
          const Complex v = u[c] * sign * nn;
          if (m1 >= 0) s[c][w.index(m1, slot(m2), slot(m3))] += v;
          if (m1 <= 0) s[c][w.index(-m1, slot(-m2), slot(-m3))] += std::conj(v);
        }
      }
  const double rms = std::sqrt(energy);
  from_spectrum(s, f);
  const double factor = rms > 0.0 ? r.param("amplitude") * r.scale / rms : 0.0;
  for (auto& c : f.u)
    for (double& v : c) v *= factor;
}

}  // namespace

double Recipe::param(const std::string& key) const {
  if (auto it = params.find(key); it != params.end()) return it->second;
  const auto& d = registry().at(sampler);
  auto it = d.find(key);
  require(it != d.end(), ErrorCode::InvalidConfig, "sampler '" + sampler + "' has no parameter '" + key + "'");
  return it->second;
}

void Recipe::validate() const {
  auto it = registry().find(sampler);
  require(it != registry().end(), ErrorCode::InvalidConfig, "unknown recipe sampler '" + sampler + "'");
  for (const auto& [k, v] : params) {
    require(it->second.count(k) == 1, ErrorCode::InvalidConfig,
            "sampler '" + sampler + "' has no parameter '" + k + "'");
    require(std::isfinite(v), ErrorCode::InvalidConfig, "recipe parameter '" + k + "' must be finite");
  }
  require(std::isfinite(scale) && scale > 0.0, ErrorCode::InvalidConfig, "recipe scale must be positive");
  if (sampler == "gaussian") {
    const double c = param("component");
    require(c == 1.0 || c == 2.0 || c == 3.0, ErrorCode::InvalidConfig, "gaussian component must be 1, 2 or 3");
  }
  for (const char* k : {"width", "period", "alpha", "lambda", "sharpness"})
    if (it->second.count(k)) require(param(k) > 0.0, ErrorCode::InvalidConfig, std::string(k) + " must be positive");
  if (sampler == "random_solenoidal") require(param("kmax") >= 1.0, ErrorCode::InvalidConfig, "kmax must be >= 1");
}

Recipe Recipe::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  Recipe r;
  require(static_cast<bool>(is >> r.sampler), ErrorCode::InvalidConfig, "empty recipe");
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    require(eq != std::string::npos && eq > 0, ErrorCode::InvalidConfig, "recipe token '" + tok + "' is not key=value");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "seed") {
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), r.seed);
      require(ec == std::errc() && ptr == val.data() + val.size(), ErrorCode::InvalidConfig, "seed must be an integer");
    } else if (key == "scale") {
      r.scale = parse_number(val, key);
    } else {
      r.params[key] = parse_number(val, key);
    }
  }
  r.validate();
  return r;
}

Recipe Recipe::from_json(const Json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  require(j.is_object(), ErrorCode::InvalidConfig, "recipe must be a string or an object");
  Recipe r;
  r.sampler = j.value("sampler", r.sampler);
  if (j.contains("params")) r.params = j.at("params").get<std::map<std::string, double>>();
  r.seed = j.value("seed", r.seed);
  r.scale = j.value("scale", r.scale);
  r.validate();
  return r;
}

std::string Recipe::to_text() const {
  std::string s = sampler;
  for (const auto& [k, v] : params) s += " " + k + "=" + format_number(v);
  if (sampler == "random_solenoidal" || seed != 0) s += " seed=" + std::to_string(seed);
  if (scale != 1.0) s += " scale=" + format_number(scale);
  return s;
}

Json Recipe::to_json() const {
  return Json{{"sampler", sampler}, {"params", params}, {"seed", seed}, {"scale", scale}, {"text", to_text()}};
}

Recipe Recipe::rescaled(double lambda) const {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::Domain, "rescale factor must be positive");
  Recipe r = *this;
  r.scale *= lambda;
  return r;
}

bool Recipe::periodic() const { return sampler == "taylor_green" || sampler == "random_solenoidal"; }

bool Recipe::solenoidal() const { return sampler != "gaussian"; }

void Recipe::check_box(const BoxGrid& grid) const {
  grid.validate();
  // Work in the unscaled variable y = scale x, where the box has edge L * scale.
  const double edge = grid.length * scale;
  std::ostringstream os;
  os.precision(10);
  if (periodic()) {
    const double period = param("period");
    if (std::abs(edge - period) > 1e-12 * period) {
      os << sampler << ": box length must equal the period, need L = " << period / scale;
      fail(ErrorCode::Domain, os.str());
    }
  } else if (sampler == "gaussian" || sampler == "gaussian_vortex") {
    const double need = 2.0 * param("width") * std::sqrt(-std::log(kTailFloor)) / scale;
    if (grid.length < need) {
      os << sampler << ": Gaussian tail does not fit, need L >= " << need;
      fail(ErrorCode::Domain, os.str());
    }
    if (param("width") / scale < 2.0 * grid.spacing()) {
      os << sampler << ": width " << param("width") / scale << " is under-resolved, need h <= " << param("width") / (2.0 * scale);
      fail(ErrorCode::Domain, os.str());
    }
  } else if (sampler == "curl_bump") {
    const double radius = 2.0 / (param("alpha") * param("lambda") * scale);
    if (radius >= 0.5 * grid.length) {
      os << "curl_bump: support radius " << radius << " exceeds the box, need L > " << 2.0 * radius;
      fail(ErrorCode::Domain, os.str());
    }
    if (radius < 16.0 * grid.spacing()) {
      os << "curl_bump: support radius " << radius << " spans fewer than 16 grid cells, need h <= " << radius / 16.0;
      fail(ErrorCode::Domain, os.str());
    }
  }
}

std::string Recipe::attestation(const BoxGrid& grid) const {
  std::ostringstream os;
  os.precision(6);
  if (sampler == "zero") return "identically zero";
  if (periodic()) return "periodic field; norms are taken over one period";
  if (sampler == "curl_bump") {
    os << "compactly supported in |x| <= " << 2.0 / (param("alpha") * param("lambda") * scale)
       << " inside the half-width " << 0.5 * grid.length;
    return os.str();
  }
  os << "Gaussian decay: |u| at the box boundary below " << kTailFloor << " of the peak";
  return os.str();
}

GridField sample_analytic(const Recipe& recipe, const BoxGrid& grid) {
  recipe.validate();
  recipe.check_box(grid);
  GridField f = GridField::zeros(grid);
  f.recipe = recipe.to_json();
  f.solenoidal = false;
  f.periodic = recipe.periodic();
  const double s = recipe.scale;
  const int n = grid.n;

  if (recipe.sampler == "random_solenoidal") {
    sample_random_solenoidal(recipe, grid, f);
  } else if (recipe.sampler != "zero") {
    const double amp = recipe.sampler == "curl_bump" ? recipe.param("lambda") : recipe.param("amplitude");
    const Smoothstep step{recipe.sampler == "curl_bump" ? recipe.param("sharpness") : 1.0};
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          // Unscaled coordinates y = s x.
          const double y1 = s * grid.coord(i), y2 = s * grid.coord(j), y3 = s * grid.coord(k);
          std::array<double, 3> v{0.0, 0.0, 0.0};
          if (recipe.sampler == "gaussian") {
            const double w = recipe.param("width");
            const int c = static_cast<int>(recipe.param("component")) - 1;
            v[c] = std::exp(-(y1 * y1 + y2 * y2 + y3 * y3) / (w * w));
          } else if (recipe.sampler == "gaussian_vortex") {
            const double w = recipe.param("width");
            const double g = std::exp(-(y1 * y1 + y2 * y2 + y3 * y3) / (w * w)) / w;
            v = {-y2 * g, y1 * g, 0.0};
          } else if (recipe.sampler == "taylor_green") {
            const double kk = 2.0 * std::numbers::pi / recipe.param("period");
            v = {std::sin(kk * y1) * std::cos(kk * y2) * std::cos(kk * y3),
                 -std::cos(kk * y1) * std::sin(kk * y2) * std::cos(kk * y3), 0.0};
          } else if (recipe.sampler == "curl_bump") {
            const double al = recipe.param("alpha") * recipe.param("lambda");
            v = psi_unit(al * y1, al * y2, al * y3, step);
          }
          const std::size_t idx = grid.index(i, j, k);
          for (int c = 0; c < 3; ++c) f.u[c][idx] = s * amp * v[c];
        }
  }
  if (recipe.solenoidal()) project_solenoidal(f);
  return f;
}

GridField curl_bump(double alpha, double lambda, const Smoothstep& phi_profile, const BoxGrid& grid) {
  Recipe r;
  r.sampler = "curl_bump";
  r.params = {{"alpha", alpha}, {"lambda", lambda}, {"sharpness", phi_profile.sharpness}};
  return sample_analytic(r, grid);
}

BoxGrid rescaled_grid(const BoxGrid& grid, double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::Domain, "rescale factor must be positive");
  BoxGrid g = grid;
  g.length = grid.length / lambda;
  return g;
}

GridField rescale(const Recipe& recipe, const BoxGrid& grid, double lambda) {
  return sample_analytic(recipe.rescaled(lambda), rescaled_grid(grid, lambda));
}

}  // namespace nsreg
