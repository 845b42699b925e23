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

#include "heatflow/lemma_check.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "common/error.hpp"
#include "common/random.hpp"
#include "constants/closed_form.hpp"
#include "fields/norms.hpp"
#include "heatflow/semigroup.hpp"

namespace nsreg {

namespace cf = constants;

namespace {

constexpr double kPi = std::numbers::pi;

// Norms of one field, memoized by exponent.
class NormCache {
 public:
  explicit NormCache(const GridField& f) : f_(f) {}
  double operator()(LebesgueExponent p) {
    auto it = cache_.find(p.value());
    if (it != cache_.end()) return it->second;
    return cache_[p.value()] = lp_norm_value(f_, p);
  }

 private:
  const GridField& f_;
  std::map<double, double> cache_;
};

// 1.5 (1/q - 1/p): the decay exponent of the L^q -> L^p heat estimate.
double heat_rate(LebesgueExponent p, LebesgueExponent q) { return 1.5 * (q.reciprocal() - p.reciprocal()); }

std::vector<KernelId> kernels_for(LemmaId id) {
  std::vector<KernelId> out;
  if (id == LemmaId::Heat) out.push_back(KernelId::heat());
  if (id == LemmaId::HeatGradient)
    for (int j = 1; j <= 3; ++j) out.push_back(KernelId::gradient(j));
  if (id == LemmaId::HeatRieszGradient)
    for (int k = 1; k <= 3; ++k)
      for (int l = k; l <= 3; ++l)  // R_k R_l is symmetric in (k, l)
        for (int j = 1; j <= 3; ++j) out.push_back(KernelId::riesz_gradient(k, l, j));
  return out;
}

std::string kernel_label(LemmaId id) {
  switch (id) {
    case LemmaId::Heat: return "G";
    case LemmaId::HeatGradient: return "max over G_m";
    case LemmaId::HeatRieszGradient: return "max over G_klj";
    case LemmaId::Riesz: return "max over R_a";
  }
  return "";
}

LemmaCase make_case(std::string estimate, const std::string& field, const std::string& kernel, double t,
                    std::optional<LebesgueExponent> p, std::optional<LebesgueExponent> q, double lhs, double rhs,
                    double tol) {
  LemmaCase c;
  c.estimate = std::move(estimate);
  c.field = field;
  c.kernel = kernel;
  c.t = t;
  c.p = p;
  c.q = q;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.pass = c.margin >= -tol * std::abs(rhs);
  return c;
}

// Real scalar trigonometric polynomial with modes |m| <= kmax on the cube of
// edge `length`, sampled at n points per axis, unit sup-norm scale.
GridField band_limited_scalar(int n, double length, int kmax, NormalStream& normal) {
  BoxGrid grid{n, length};
  GridField f = GridField::zeros(grid);
  f.recipe = Json{{"sampler", "band_limited_scalar"}, {"kmax", kmax}};
  f.periodic = true;
  f.solenoidal = false;
  const Wavenumbers w(n, length);
  std::vector<Complex> spec(static_cast<std::size_t>(n) * n * w.nx, Complex{});
  auto slot = [n](int m) { return m >= 0 ? m : m + n; };
  const double nn = static_cast<double>(grid.size());
  for (int m3 = 0; m3 <= kmax; ++m3)
    for (int m2 = -kmax; m2 <= kmax; ++m2)
      for (int m1 = -kmax; m1 <= kmax; ++m1) {
        if (m3 == 0 && (m2 < 0 || (m2 == 0 && m1 < 0))) continue;
        if (m1 * m1 + m2 * m2 + m3 * m3 > kmax * kmax) continue;
        const double re = normal();
        const double im = (m1 == 0 && m2 == 0 && m3 == 0) ? 0.0 : normal();
        const Complex v = Complex{re, im} * nn;
        if (m1 >= 0) spec[w.index(m1, slot(m2), slot(m3))] += v;
        if (m1 <= 0 && !(m1 == 0 && m2 == 0 && m3 == 0)) spec[w.index(-m1, slot(-m2), slot(-m3))] += std::conj(v);
      }
  Fft3& fft = fft3_for(n);
  fft.inverse(spec, f.u[0]);
  return f;
}

void riesz_cases(const LemmaSweep& sweep, const ConstantsContext& ctx, LemmaReport& rep) {
  NormalStream normal(sweep.band_limited_seed);
  const double length = 2.0 * ctx.cutoff().half_width;
  const auto inf = LebesgueExponent::infinity();
  const auto two = LebesgueExponent::any(2.0);
  for (int i = 0; i < sweep.band_limited_count; ++i) {
    const GridField w = band_limited_scalar(sweep.band_limited_n, length, sweep.band_limited_kmax, normal);
    const std::string name = "band_limited_scalar #" + std::to_string(i);
    double sup = 0.0, l2 = 0.0, l2_sq_sum = 0.0;
    for (int a = 1; a <= 3; ++a) {
      sup = std::max(sup, lp_norm_value(riesz_cutoff_apply(a, w, ctx.cutoff()), inf));
      const double r = lp_norm_value(riesz_apply(a, w), two);
      l2 = std::max(l2, r);
      l2_sq_sum += r * r;
    }
    rep.cases.push_back(make_case("Linf (low-pass part)", name, "max over R_a S_0", 0.0, inf, std::nullopt, sup,
                                  ctx.c_infty() * lp_norm_value(w, inf), sweep.tolerance));
    // The mean is annihilated; compare with the mean-free part.
    GridField centered = w;
    double mean = 0.0;
    for (double v : centered.u[0]) mean += v;
    mean /= static_cast<double>(centered.u[0].size());
    for (double& v : centered.u[0]) v -= mean;
    const double w2 = lp_norm_value(centered, two);
    auto c = make_case("L2", name, kernel_label(LemmaId::Riesz), 0.0, two, std::nullopt, l2, w2, sweep.tolerance);
    c.note = "sum_a ||R_a w||^2 / ||w - mean||^2 = " + std::to_string(w2 > 0 ? l2_sq_sum / (w2 * w2) : 1.0);
    rep.cases.push_back(std::move(c));
  }
}

void semigroup_cases(LemmaId id, const LemmaSweep& sweep, const ConstantsContext& ctx, LemmaReport& rep) {
  const double cinf = ctx.c_infty();
  const auto kernels = kernels_for(id);
  const std::string klabel = kernel_label(id);
  const auto one = LebesgueExponent::any(1.0);

  for (const auto& [recipe, grid] : sweep.fields) {
    const std::string fname = recipe.to_text();
    GridField u0;
    try {
      u0 = sample_analytic(recipe, grid);
    } catch (const Error& e) {
      LemmaCase c;
      c.estimate = "sampling";
      c.field = fname;
      c.pass = false;
      c.note = e.what();
      rep.cases.push_back(c);
      continue;
    }
    NormCache u0_norm(u0);
    const Wavenumbers w(grid.n, grid.length);
    const Spectrum3 base = to_spectrum(u0);
    Fft3& fft = fft3_for(grid.n);
    GridField image = u0;

    for (double t : sweep.t_grid) {
      if (!u0.periodic && wraparound_mass(grid, t) >= 1e-10) {
        LemmaCase c;
        c.estimate = "box";
        c.field = fname;
        c.t = t;
        c.pass = false;
        c.note = "box too small for t; need length >= " + std::to_string(required_box_length(t));
        rep.cases.push_back(c);
        continue;
      }
      // lhs: max over the kernel family of ||K(t) u0||_p, for every p.
      std::map<double, double> lhs;
      for (const auto& k : kernels) {
        for (int c = 0; c < 3; ++c) {
          std::vector<Complex> spec = base[c];
          apply_symbol(k, t, w, spec);
          fft.inverse(spec, image.u[c]);
        }
        for (const auto& p : sweep.p_grid) lhs[p.value()] = std::max(lhs[p.value()], lp_norm_value(image, p));
      }

      for (const auto& p : sweep.p_grid) {
        const double L = lhs[p.value()];
        const auto pd = p.conjugate();
        auto push = [&](const std::string& est, std::optional<LebesgueExponent> q, double rhs, std::string note = {}) {
          auto c = make_case(est, fname, klabel, t, p, q, L, rhs, sweep.tolerance);
          c.note = std::move(note);
          rep.cases.push_back(std::move(c));
        };
        const double grad_rate = 0.5;  // extra t^(-1/2) from one derivative
        switch (id) {
          case LemmaId::Heat:
            push("Lp->Lp", p, u0_norm(p));
            push("L1->Lp", one, cf::c0(p, one) * std::pow(t, -heat_rate(p, one)) * u0_norm(one));
            if (p.value() > 2.0)
              push("Lp'->Lp", pd, cf::c0(p, pd) * std::pow(t, -heat_rate(p, pd)) * u0_norm(pd));
            break;
          case LemmaId::HeatGradient:
            push("Lp->Lp", p, std::pow(kPi * t, -0.5) * u0_norm(p));
            push("L1->Lp", one, cf::c1(p) * std::pow(t, -heat_rate(p, one) - grad_rate) * u0_norm(one));
            push("Lp'->Lp", pd, cf::c2(p) * std::pow(t, -heat_rate(p, pd) - grad_rate) * u0_norm(pd));
            break;
          case LemmaId::HeatRieszGradient:
            push("Lp->Lp", p, cf::c4(p, cinf) * std::pow(kPi * t, -0.5) * u0_norm(p));
            push("L1->Lp", one,
                 cf::c4(p, cinf) * cf::c1(p) * std::pow(t, -heat_rate(p, one) - grad_rate) * u0_norm(one));
            push("Lp'->Lp", pd,
                 cf::riesz_power(p, cinf) * cf::c2(p) * std::pow(t, -heat_rate(p, pd) - grad_rate) * u0_norm(pd));
            break;
          case LemmaId::Riesz:
            break;
        }
        for (double qv : sweep.q_grid) {
          if (!(qv > 1.0 && qv < p.value())) continue;
          const auto q = LebesgueExponent::any(qv);
          const double nq = u0_norm(q);
          switch (id) {
            case LemmaId::Heat:
              push("Lq->Lp", q, cf::c0(p, q) * std::pow(t, -heat_rate(p, q)) * nq);
              break;
            case LemmaId::HeatGradient:
              push("Lq->Lp", q, cf::c3(p, q) * std::pow(t, -heat_rate(p, q) - grad_rate) * nq);
              break;
            case LemmaId::HeatRieszGradient: {
              const double decay = cf::c3(p, q) * std::pow(t, -heat_rate(p, q) - grad_rate) * nq;
              const bool mismatch = qv >= 2.0 && p.value() > 2.0;
              push("Lq->Lp", q, cf::c5(p, q, cinf) * decay,
                   mismatch ? "lemma power C_inf^((2q-4)/q) differs from the criteria's C_inf^((2p-4)/p)" : "");
              push("Lq->Lp (criteria power)", q, cf::riesz_power(p, cinf) * decay);
              break;
            }
            case LemmaId::Riesz:
              break;
          }
        }
      }
    }
  }
}

}  // namespace

LemmaId parse_lemma_id(const std::string& s) {
  static const std::map<std::string, LemmaId> names = {
      {"riesz", LemmaId::Riesz},           {"2.1", LemmaId::Riesz},
      {"heat", LemmaId::Heat},             {"3.1", LemmaId::Heat},
      {"heat-gradient", LemmaId::HeatGradient}, {"3.2", LemmaId::HeatGradient},
      {"heat-riesz-gradient", LemmaId::HeatRieszGradient}, {"3.3", LemmaId::HeatRieszGradient},
  };
  auto it = names.find(s);
  require(it != names.end(), ErrorCode::InvalidConfig, "unknown lemma id '" + s + "'");
  return it->second;
}

std::string lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::Riesz: return "riesz";
    case LemmaId::Heat: return "heat";
    case LemmaId::HeatGradient: return "heat-gradient";
    case LemmaId::HeatRieszGradient: return "heat-riesz-gradient";
  }
  return "";
}

std::string lemma_number(LemmaId id) {
  switch (id) {
    case LemmaId::Riesz: return "2.1";
    case LemmaId::Heat: return "3.1";
    case LemmaId::HeatGradient: return "3.2";
    case LemmaId::HeatRieszGradient: return "3.3";
  }
  return "";
}

Json LemmaCase::to_json() const {
  return Json{{"estimate", estimate},
              {"field", field},
              {"kernel", kernel},
              {"t", t},
              {"p", p ? p->to_json() : Json(nullptr)},
              {"q", q ? q->to_json() : Json(nullptr)},
              {"lhs", json_number(lhs)},
              {"rhs", json_number(rhs)},
              {"margin", json_number(margin)},
              {"pass", pass},
              {"note", note}};
}

std::size_t LemmaReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const LemmaCase& c) { return !c.pass; }));
}

Json LemmaReport::to_json() const {
  Json cs = Json::array();
  for (const auto& c : cases) cs.push_back(c.to_json());
  return Json{{"lemma", lemma_number(lemma)}, {"name", lemma_name(lemma)}, {"tolerance", tolerance},
              {"cases", cs}, {"pass", pass}, {"failures", failures()}};
}

LemmaSweep LemmaSweep::standard() {
  LemmaSweep s;
  for (double p : {4.0, 6.0, 12.0}) s.p_grid.push_back(LebesgueExponent::any(p));
  s.p_grid.push_back(LebesgueExponent::infinity());
  const BoxGrid wide{128, 48.0};
  s.fields.emplace_back(Recipe::parse("gaussian amplitude=1 width=1 component=1"), wide);
  s.fields.emplace_back(Recipe::parse("gaussian_vortex amplitude=1 width=1"), wide);
  s.fields.emplace_back(Recipe::parse("curl_bump alpha=0.25 lambda=1"), wide);
  s.fields.emplace_back(Recipe::parse("taylor_green amplitude=1 period=6.283185307179586"),
                        BoxGrid{32, 2.0 * std::numbers::pi});
  return s;
}

Json LemmaSweep::to_json() const {
  Json ps = Json::array();
  for (const auto& p : p_grid) ps.push_back(p.to_json());
  Json fs = Json::array();
  for (const auto& [r, g] : fields) fs.push_back(Json{{"recipe", r.to_text()}, {"grid", g.to_json()}});
  return Json{{"t_grid", t_grid},
              {"p_grid", ps},
              {"q_grid", q_grid},
              {"fields", fs},
              {"tolerance", tolerance},
              {"band_limited",
               {{"count", band_limited_count}, {"seed", band_limited_seed}, {"kmax", band_limited_kmax},
                {"n", band_limited_n}}}};
}

LemmaSweep LemmaSweep::from_json(const Json& j) {
  LemmaSweep s = standard();
  if (j.contains("t_grid")) s.t_grid = j.at("t_grid").get<std::vector<double>>();
  if (j.contains("p_grid")) {
    s.p_grid.clear();
    for (const auto& p : j.at("p_grid")) s.p_grid.push_back(LebesgueExponent::from_json(p));
  }
  if (j.contains("q_grid")) s.q_grid = j.at("q_grid").get<std::vector<double>>();
  if (j.contains("fields")) {
    s.fields.clear();
    for (const auto& f : j.at("fields"))
      s.fields.emplace_back(Recipe::from_json(f.at("recipe")), BoxGrid::from_json(f.at("grid")));
  }
  s.tolerance = j.value("tolerance", s.tolerance);
  if (j.contains("band_limited")) {
    const auto& b = j.at("band_limited");
    s.band_limited_count = b.value("count", s.band_limited_count);
    s.band_limited_seed = b.value("seed", s.band_limited_seed);
    s.band_limited_kmax = b.value("kmax", s.band_limited_kmax);
    s.band_limited_n = b.value("n", s.band_limited_n);
  }
  require(!s.t_grid.empty() && !s.p_grid.empty(), ErrorCode::InvalidConfig, "lemma sweep grids must be nonempty");
  for (double t : s.t_grid) require(t > 0.0, ErrorCode::InvalidConfig, "sweep times must be positive");
  return s;
}

LemmaReport verify_lemma(LemmaId lemma, const LemmaSweep& sweep, const ConstantsContext& ctx) {
  LemmaReport rep;
  rep.lemma = lemma;
  rep.tolerance = sweep.tolerance;
  if (lemma == LemmaId::Riesz)
    riesz_cases(sweep, ctx, rep);
  else
    semigroup_cases(lemma, sweep, ctx, rep);
  rep.pass = rep.failures() == 0;
  return rep;
}

}  // namespace nsreg
