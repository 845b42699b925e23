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

#include "mildsolve/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "common/error.hpp"
#include "fields/norms.hpp"
#include "mildsolve/nonlinear.hpp"

namespace nsreg {

void SolverConfig::validate() const {
  grid.validate();
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::InvalidConfig, "dt must be positive");
  require(std::isfinite(t_start) && t_start >= 0.0, ErrorCode::InvalidConfig, "t_start must be nonnegative");
  require(std::isfinite(t_end) && t_end - t_start >= dt * (1.0 - 1e-12), ErrorCode::InvalidConfig,
          "t_end - t_start must be at least one time step");
  require(dealias > 0.0 && dealias <= 1.0, ErrorCode::InvalidConfig, "dealias fraction must lie in (0, 1]");
  require(!monitor_p.empty(), ErrorCode::InvalidConfig, "monitor_p must not be empty");
  require(cfl > 0.0, ErrorCode::InvalidConfig, "cfl must be positive");
  require(output_every >= 1, ErrorCode::InvalidConfig, "output_every must be >= 1");
  require(ceiling > 1.0, ErrorCode::InvalidConfig, "ceiling must exceed 1");
  require(dt_min > 0.0, ErrorCode::InvalidConfig, "dt_min must be positive");
  require(agreement_threshold > 0.0, ErrorCode::InvalidConfig, "agreement_threshold must be positive");
  int last = grid.n;
  for (const auto& r : refinement) {
    require(r.n > last, ErrorCode::InvalidConfig, "refinement must be strictly increasing in n above grid.n");
    require(r.n % 2 == 0 && r.n <= BoxGrid::kMaxPoints, ErrorCode::InvalidConfig, "refinement n must be even and <= 512");
    require(r.dt > 0.0, ErrorCode::InvalidConfig, "refinement dt must be positive");
    last = r.n;
  }
}

int SolverConfig::steps() const {
  return std::max(1, static_cast<int>(std::ceil((t_end - t_start) / dt - 1e-9)));
}

double SolverConfig::step() const { return (t_end - t_start) / steps(); }

Json SolverConfig::to_json() const {
  Json mp = Json::array();
  for (const auto& p : monitor_p) mp.push_back(p.to_json());
  Json ref = Json::array();
  for (const auto& r : refinement) ref.push_back(Json{{"n", r.n}, {"dt", r.dt}});
  return Json{{"grid", grid.to_json()},   {"dt", dt},
              {"t_end", t_end},           {"t_start", t_start},
              {"dealias", dealias},       {"monitor_p", mp},
              {"refinement", ref},        {"cfl", cfl},
              {"output_every", output_every}, {"ceiling", ceiling},
              {"dt_min", dt_min},         {"agreement_threshold", agreement_threshold}};
}

SolverConfig SolverConfig::from_json(const Json& j) {
  require(j.is_object(), ErrorCode::InvalidConfig, "solver config must be an object");
  SolverConfig c;
  if (j.contains("grid")) c.grid = BoxGrid::from_json(j.at("grid"));
  c.dt = j.value("dt", c.dt);
  c.t_end = j.value("t_end", c.t_end);
  c.t_start = j.value("t_start", c.t_start);
  c.dealias = j.value("dealias", c.dealias);
  if (j.contains("monitor_p")) {
    c.monitor_p.clear();
    for (const auto& p : j.at("monitor_p")) c.monitor_p.push_back(LebesgueExponent::from_json(p));
  }
  if (j.contains("refinement")) {
    for (const auto& r : j.at("refinement")) c.refinement.push_back({r.at("n").get<int>(), r.at("dt").get<double>()});
  }
  c.cfl = j.value("cfl", c.cfl);
  c.output_every = j.value("output_every", c.output_every);
  c.ceiling = j.value("ceiling", c.ceiling);
  c.dt_min = j.value("dt_min", c.dt_min);
  c.agreement_threshold = j.value("agreement_threshold", c.agreement_threshold);
  c.validate();
  return c;
}

namespace {

struct Factors {
  double dt = -1.0;
  std::vector<double> e, e_half;
};

void set_factors(const Wavenumbers& w, double dt, Factors& f) {
  if (f.dt == dt) return;
  f.dt = dt;
  const std::size_t ns = static_cast<std::size_t>(w.n) * w.n * w.nx;
  f.e.resize(ns);
  f.e_half.resize(ns);
  for (int iz = 0; iz < w.n; ++iz)
    for (int iy = 0; iy < w.n; ++iy)
      for (int ix = 0; ix < w.nx; ++ix) {
        const std::size_t s = w.index(ix, iy, iz);
        const double k2 = w.k2(ix, iy, iz);
        f.e[s] = std::exp(-k2 * dt);
        f.e_half[s] = std::exp(-0.5 * k2 * dt);
      }
}

void record(const SolverConfig& cfg, const Wavenumbers& w, const Spectrum3& u, double t, double energy,
            GridField& scratch, SolverSeries& out) {
  from_spectrum(u, scratch);
  out.times.push_back(t);
  const double h = cfg.grid.spacing();
  const double l2sq = spectral_energy_sum(w, u) * h * h * h / static_cast<double>(scratch.grid.size());
  out.l2.push_back(std::sqrt(l2sq));
  for (std::size_t m = 0; m < cfg.monitor_p.size(); ++m) out.norms[m].push_back(lp_norm_value(scratch, cfg.monitor_p[m]));
  out.energy.push_back(l2sq + energy);
  out.div_residual.push_back(divergence_residual(w, u));
}

}  // namespace

SolverSeries spectral_series(const GridField& u0, const SolverConfig& cfg, GridField* final_field) {
  cfg.validate();
  require(u0.grid == cfg.grid, ErrorCode::InvalidConfig, "initial field grid differs from the solver grid");
  require(u0.solenoidal, ErrorCode::InvalidConfig, "the solver needs divergence-free initial data");
  require(u0.all_finite(), ErrorCode::Domain, "initial field has non-finite samples");

  SolverSeries out;
  out.n = cfg.grid.n;
  out.norms.resize(cfg.monitor_p.size());
  const int steps = cfg.steps();
  const double dt = cfg.step();
  out.dt = dt;

  QuadraticTerm quad(cfg.grid, cfg.dealias);
  const Wavenumbers& w = quad.wavenumbers();
  const double h = cfg.grid.spacing();
  const double vol = h * h * h / static_cast<double>(cfg.grid.size());
  const std::size_t ns = quad.mask().size();

  Spectrum3 u = to_spectrum(u0);
  leray_project(w, u);
  Spectrum3 k1 = zero_spectrum(w), k2 = k1, k3 = k1, k4 = k1, a = k1, b = k1, c = k1;
  GridField scratch = u0;
  double dissipated = 0.0;
  const double umax0 = quad.evaluate(u, k1);
  record(cfg, w, u, cfg.t_start, 0.0, scratch, out);
  out.t_reached = cfg.t_start;
  if (umax0 == 0.0 && spectral_energy_sum(w, u) == 0.0) {
    for (int s = 1; s <= steps; ++s)
      if (s % cfg.output_every == 0 || s == steps) record(cfg, w, u, cfg.t_start + s * dt, 0.0, scratch, out);
    out.t_reached = cfg.t_end;
    if (final_field) *final_field = u0;
    return out;
  }

  Factors fac;
  int sub = 1;  // substeps per step after CFL halvings
  for (int step = 1; step <= steps && out.status == "completed"; ++step) {
    int done = 0;
    while (done < sub) {
      const double ds = dt / sub;
      const double umax = quad.evaluate(u, k1);
      if (!std::isfinite(umax) || umax > cfg.ceiling * umax0) {
        std::ostringstream os;
        os << "max |u| = " << umax << " exceeds " << cfg.ceiling << " x initial " << umax0;
        out.status = "norm-exploded";
        out.diagnostics = os.str();
        break;
      }
      if (ds * umax > cfg.cfl * h) {
        sub *= 2;
        done *= 2;
        ++out.cfl_halvings;
        if (dt / sub < cfg.dt_min) {
          std::ostringstream os;
          os << "CFL step " << dt / sub << " fell below dt_min " << cfg.dt_min;
          out.status = "norm-exploded";
          out.diagnostics = os.str();
          break;
        }
        continue;
      }
      set_factors(w, ds, fac);
      const auto& e = fac.e;
      const auto& eh = fac.e_half;
      // du/dt = -k^2 u - B(u), integrating factor exp(k^2 t).
      for (int cc = 0; cc < 3; ++cc)
        for (std::size_t s = 0; s < ns; ++s) a[cc][s] = eh[s] * (u[cc][s] - 0.5 * ds * k1[cc][s]);
      quad.evaluate(a, k2);
      for (int cc = 0; cc < 3; ++cc)
        for (std::size_t s = 0; s < ns; ++s) b[cc][s] = eh[s] * u[cc][s] - 0.5 * ds * k2[cc][s];
      quad.evaluate(b, k3);
      for (int cc = 0; cc < 3; ++cc)
        for (std::size_t s = 0; s < ns; ++s) c[cc][s] = e[s] * u[cc][s] - ds * eh[s] * k3[cc][s];
      quad.evaluate(c, k4);

      double diss = 0.0;
      for (int iz = 0; iz < w.n; ++iz)
        for (int iy = 0; iy < w.n; ++iy)
          for (int ix = 0; ix < w.nx; ++ix) {
            const std::size_t s = w.index(ix, iy, iz);
            const double kk = 2.0 * w.k2(ix, iy, iz);
            double old2 = 0.0, a2 = 0.0, b2 = 0.0, c2 = 0.0;
            for (int cc = 0; cc < 3; ++cc) {
              old2 += std::norm(u[cc][s]);
              a2 += std::norm(a[cc][s]);
              b2 += std::norm(b[cc][s]);
              c2 += std::norm(c[cc][s]);
              u[cc][s] = e[s] * u[cc][s] -
                         ds / 6.0 * (e[s] * k1[cc][s] + 2.0 * eh[s] * (k2[cc][s] + k3[cc][s]) + k4[cc][s]);
            }
            // Exact decay of the old state, plus the RK4 stage weights on the
            // nonlinear remainder: the dissipation rides along as one more
            // component of the same scheme, so it stays fourth order.
            const double ra = a2 - eh[s] * eh[s] * old2;
            const double rb = b2 - eh[s] * eh[s] * old2;
            const double rc = c2 - e[s] * e[s] * old2;
            diss += w.parseval_weight(ix) * (old2 * (1.0 - e[s] * e[s]) + ds / 6.0 * kk * (2.0 * ra + 2.0 * rb + rc));
          }
      dissipated += diss * vol;
      ++done;
    }
    if (out.status != "completed") break;
    const double t = cfg.t_start + step * dt;
    out.t_reached = t;
    if (step % cfg.output_every == 0 || step == steps) record(cfg, w, u, t, dissipated, scratch, out);
  }
  if (final_field) {
    *final_field = spectrum_to_field(cfg.grid, u);
    final_field->recipe = Json{{"derived_from", u0.recipe}, {"op", "spectral_run"}, {"t", out.t_reached}};
    final_field->solenoidal = true;
    final_field->periodic = true;
  }
  return out;
}

GridField resample(const GridField& f, int n) {
  if (n == f.grid.n) return f;
  BoxGrid g{n, f.grid.length};
  g.validate();
  const Wavenumbers src(f.grid.n, f.grid.length), dst(n, f.grid.length);
  const Spectrum3 in = to_spectrum(f);
  Spectrum3 out = zero_spectrum(dst);
  const int keep = std::min(f.grid.n, n) / 2;  // Nyquist modes are dropped
  const double scale = std::pow(static_cast<double>(n) / f.grid.n, 3);
  for (int iz = 0; iz < dst.n; ++iz)
    for (int iy = 0; iy < dst.n; ++iy)
      for (int ix = 0; ix < dst.nx; ++ix) {
        const int mx = dst.mx[ix], my = dst.my[iy], mz = dst.my[iz];
        if (std::abs(mx) >= keep || std::abs(my) >= keep || std::abs(mz) >= keep) continue;
        const int sy = my >= 0 ? my : my + src.n, sz = mz >= 0 ? mz : mz + src.n;
        const std::size_t d = dst.index(ix, iy, iz), s = src.index(mx, sy, sz);
        for (int c = 0; c < 3; ++c) out[c][d] = scale * in[c][s];
      }
  GridField r = spectrum_to_field(g, out);
  r.recipe = Json{{"derived_from", f.recipe}, {"op", "resample"}, {"n", n}};
  r.solenoidal = f.solenoidal;
  r.periodic = f.periodic;
  return r;
}

double series_agreement(const SolverSeries& a, const SolverSeries& b, const std::vector<LebesgueExponent>& monitors) {
  double worst = 0.0;
  std::size_t j = 0;
  int shared = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const double t = a.times[i];
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    while (j < b.times.size() && b.times[j] < t - tol) ++j;
    if (j == b.times.size()) break;
    if (std::abs(b.times[j] - t) > tol) continue;
    ++shared;
    auto rel = [](double x, double y) {
      const double s = std::max(std::abs(x), std::abs(y));
      return s == 0.0 ? 0.0 : std::abs(x - y) / s;
    };
    worst = std::max(worst, rel(a.l2[i], b.l2[j]));
    for (std::size_t m = 0; m < monitors.size(); ++m)
      if (!monitors[m].is_infinite()) worst = std::max(worst, rel(a.norms[m][i], b.norms[m][j]));
  }
  return shared == 0 ? std::numeric_limits<double>::infinity() : worst;
}

SolverRun spectral_run(const GridField& u0, const SolverConfig& cfg) {
  SolverRun run;
  run.config = cfg;
  run.series = spectral_series(u0, cfg, &run.final_field);
  run.status = run.series.status;
  run.t_reached = run.series.t_reached;
  const double e0 = run.series.energy.front();
  for (std::size_t i = 0; i < run.series.times.size(); ++i) {
    run.max_div_residual = std::max(run.max_div_residual, run.series.div_residual[i]);
    if (e0 > 0.0) run.energy_excess = std::max(run.energy_excess, run.series.energy[i] / e0 - 1.0);
  }
  if (cfg.refinement.empty() || run.status != "completed") return run;

  double agreement = 0.0;
  const SolverSeries* prev = &run.series;
  for (const auto& r : cfg.refinement) {
    SolverConfig rc = cfg;
    rc.grid.n = r.n;
    rc.dt = r.dt;
    rc.refinement.clear();
    rc.output_every = 1;
    run.refinements.push_back(spectral_series(resample(u0, r.n), rc));
    const SolverSeries& cur = run.refinements.back();
    if (cur.status != "completed") {
      agreement = std::numeric_limits<double>::infinity();
      break;
    }
    agreement = std::max(agreement, series_agreement(*prev, cur, cfg.monitor_p));
    prev = &cur;
  }
  run.refinement_agreement = agreement;
  if (!(agreement <= cfg.agreement_threshold)) run.status = "refinement-diverged";
  return run;
}

std::vector<std::string> csv_columns(const std::vector<LebesgueExponent>& monitors) {
  std::vector<std::string> cols{"t", "l2"};
  for (const auto& p : monitors) cols.push_back("lp_" + p.to_string());
  cols.push_back("energy_lhs");
  cols.push_back("div_residual");
  return cols;
}

std::string SolverRun::csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  const auto cols = csv_columns(config.monitor_p);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    os << series.times[i] << ',' << series.l2[i];
    for (const auto& n : series.norms) os << ',' << n[i];
    os << ',' << series.energy[i] << ',' << series.div_residual[i] << '\n';
  }
  return os.str();
}

Json SolverRun::manifest() const {
  Json refs = Json::array();
  for (const auto& r : refinements)
    refs.push_back(Json{{"n", r.n}, {"dt", r.dt}, {"status", r.status}, {"t_reached", r.t_reached}});
  return Json{{"config", config.to_json()},
              {"status", status},
              {"t_reached", t_reached},
              {"steps", config.steps()},
              {"dt_effective", series.dt},
              {"cfl_halvings", series.cfl_halvings},
              {"samples", series.times.size()},
              {"max_div_residual", max_div_residual},
              {"energy_excess", energy_excess},
              {"refinement_agreement", refinement_agreement ? json_number(*refinement_agreement) : Json(nullptr)},
              {"refinements", refs},
              {"csv_columns", csv_columns(config.monitor_p)},
              {"diagnostics", series.diagnostics}};
}

}  // namespace nsreg
