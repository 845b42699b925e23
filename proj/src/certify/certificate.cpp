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

#include "certify/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "constants/closed_form.hpp"
#include "fields/norms.hpp"
#include "fields/recipe.hpp"

namespace nsreg {

namespace cf = constants;

namespace {

constexpr int kCertificateVersion = 1;
constexpr double kInf = std::numeric_limits<double>::infinity();

Json exponents_json(const std::vector<LebesgueExponent>& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(e.to_json());
  return a;
}

std::vector<LebesgueExponent> exponents_from_json(const Json& j, LebesgueExponent::Role role) {
  std::vector<LebesgueExponent> out;
  for (const auto& e : j) out.push_back(LebesgueExponent::from_json(e, role));
  return out;
}

double lookup(const std::vector<std::pair<LebesgueExponent, double>>& norms, LebesgueExponent r) {
  for (const auto& [e, v] : norms)
    if (e == r) return v;
  fail(ErrorCode::InvalidConfig, "no norm supplied for exponent " + r.to_string());
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

SearchConfig SearchConfig::standard() {
  SearchConfig s;
  for (double p : {3.5, 4.0, 5.0, 6.0, 8.0, 12.0, 24.0}) {
    s.p_grid.push_back(LebesgueExponent::p_role(p));
    s.l3_p_grid.push_back(LebesgueExponent::p_role(p));
  }
  s.p_grid.push_back(LebesgueExponent::infinity());
  for (double q : {1.0, 1.5, 2.0, 2.5, 2.9}) s.q_grid.push_back(LebesgueExponent::q_role(q));
  return s;
}

Json SearchConfig::to_json() const {
  return Json{{"p_grid", exponents_json(p_grid)},
              {"q_grid", exponents_json(q_grid)},
              {"l3_p_grid", exponents_json(l3_p_grid)},
              {"boundary_band", boundary_band},
              {"equivalence_tolerance", equivalence_tolerance}};
}

SearchConfig SearchConfig::from_json(const Json& j) {
  SearchConfig s = standard();
  if (j.contains("p_grid")) s.p_grid = exponents_from_json(j.at("p_grid"), LebesgueExponent::Role::P);
  if (j.contains("q_grid")) s.q_grid = exponents_from_json(j.at("q_grid"), LebesgueExponent::Role::Q);
  if (j.contains("l3_p_grid")) {
    s.l3_p_grid = exponents_from_json(j.at("l3_p_grid"), LebesgueExponent::Role::P);
  } else if (j.contains("p_grid")) {
    s.l3_p_grid.clear();
    for (const auto& p : s.p_grid)
      if (!p.is_infinite()) s.l3_p_grid.push_back(p);
  }
  s.boundary_band = j.value("boundary_band", s.boundary_band);
  s.equivalence_tolerance = j.value("equivalence_tolerance", s.equivalence_tolerance);
  require(!s.p_grid.empty() && !s.q_grid.empty(), ErrorCode::InvalidConfig, "search grids must be nonempty");
  for (const auto& p : s.l3_p_grid)
    require(!p.is_infinite(), ErrorCode::InvalidConfig, "the L^3 grid must hold finite p only");
  return s;
}

Json L3Check::to_json() const {
  return Json{{"success", success}, {"best_p", best_p.to_json()}, {"threshold", threshold},
              {"norm_l3", norm_l3}, {"margin", margin},             {"boundary", boundary},
              {"inequality", "strict"}};
}

L3Check check_l3_smallness(double norm_l3, const std::vector<LebesgueExponent>& p_grid, const ConstantsContext& ctx,
                           double boundary_band) {
  require(!p_grid.empty(), ErrorCode::Domain, "L^3 smallness needs a nonempty p grid");
  for (const auto& p : p_grid)
    require(!p.is_infinite() && p.value() > 3.0, ErrorCode::Domain, "L^3 smallness grid must lie in (3, inf)");
  require(std::isfinite(norm_l3) && norm_l3 >= 0.0, ErrorCode::Domain, "L^3 norm must be finite and nonnegative");
  const auto best = cf::best_idc3p_threshold(p_grid, ctx.c_infty());
  L3Check c;
  c.best_p = best.p;
  c.threshold = best.threshold;
  c.norm_l3 = norm_l3;
  c.margin = best.threshold - norm_l3;
  c.success = norm_l3 < best.threshold;
  c.boundary = std::abs(c.margin) < boundary_band * best.threshold;
  return c;
}

L3Check check_l3_smallness(const GridField& field, const std::vector<LebesgueExponent>& p_grid,
                           const ConstantsContext& ctx) {
  return check_l3_smallness(lp_norm_value(field, LebesgueExponent::any(3.0)), p_grid, ctx);
}

Json PairPoint::to_json() const {
  return Json{{"bracket", bracket.to_json()},
              {"log_q", json_number(log_q)},
              {"log_inv_k0", log_inv_k0},
              {"log_margin", json_number(log_margin)},
              {"pass_q", pass_q},
              {"pass_t", pass_t},
              {"boundary", boundary}};
}

Json NormPairCheck::to_json() const {
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(p.to_json());
  return Json{{"success", success}, {"best", best ? best->to_json() : Json(nullptr)}, {"points", pts},
              {"inequality", "non-strict"}};
}

NormPairCheck check_norm_pair_from_norms(const std::vector<std::pair<LebesgueExponent, double>>& norms,
                                         const SearchConfig& search, const ConstantsContext& ctx) {
  auto ps = search.p_grid;
  auto qs = search.q_grid;
  std::sort(ps.begin(), ps.end());
  std::sort(qs.begin(), qs.end());
  NormPairCheck out;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      const double np = lookup(norms, p);
      const double nq = lookup(norms, q);
      PairPoint pt;
      pt.bracket = TimeBracket::make(p, q, np, nq, ctx);
      pt.log_q = log_q_pair(np, nq, p, q);
      pt.log_inv_k0 = -cf::log_k0_expanded(p, q, ctx.c_infty());
      pt.log_margin = pt.log_inv_k0 - pt.log_q;
      pt.pass_q = pt.log_q <= pt.log_inv_k0;
      pt.boundary = std::abs(pt.log_margin) < search.boundary_band * std::max(1.0, std::abs(pt.log_inv_k0));
      if (pt.bracket.t_l && pt.bracket.t_r) {
        // Second route: the time markers themselves.
        const double gap = log_t_lower(p, np, ctx) - log_t_upper(p, q, nq, ctx);
        pt.pass_t = gap >= 0.0;
        const double scale = std::max(1.0, std::abs(gap));
        if (std::abs(gap - pt.log_margin) > search.equivalence_tolerance * scale)
          fail(ErrorCode::InvariantViolation, "T_r <= T_l and Q <= 1/K_0 disagree at (p, q) = (" + p.to_string() +
                                                  ", " + q.to_string() + "): log gaps " + fmt(gap) + " vs " +
                                                  fmt(pt.log_margin));
      } else {
        pt.pass_t = true;  // zero data: both markers vacuous
      }
      if (pt.pass_q != pt.pass_t && !pt.boundary)
        fail(ErrorCode::InvariantViolation, "norm-pair verdicts disagree at (p, q) = (" + p.to_string() + ", " +
                                                q.to_string() + ")");
      if (!out.best || pt.log_margin > out.best->log_margin) out.best = pt;
      out.points.push_back(std::move(pt));
    }
  out.success = out.best && out.best->pass_q;
  return out;
}

NormPairCheck check_norm_pair(const GridField& field, const SearchConfig& search, const ConstantsContext& ctx) {
  std::vector<std::pair<LebesgueExponent, double>> norms;
  for (const auto& p : search.p_grid) norms.emplace_back(p, lp_norm_value(field, p));
  for (const auto& q : search.q_grid) norms.emplace_back(q, lp_norm_value(field, q));
  return check_norm_pair_from_norms(norms, search, ctx);
}

std::string verdict_name(VerdictType v) {
  switch (v) {
    case VerdictType::GlobalByL3Smallness: return "GlobalByL3Smallness";
    case VerdictType::GlobalByNormPair: return "GlobalByNormPair";
    case VerdictType::GlobalByBracketCrossing: return "GlobalByBracketCrossing";
    case VerdictType::UndeterminedBracket: return "UndeterminedBracket";
    case VerdictType::SimulationSupported: return "SimulationSupported";
  }
  return "";
}

Json Verdict::to_json() const {
  auto opt = [](std::optional<double> v) { return v ? json_number(*v) : Json(nullptr); };
  return Json{{"type", verdict_name(type)},
              {"p", p ? p->to_json() : Json(nullptr)},
              {"q", q ? q->to_json() : Json(nullptr)},
              {"margin", json_number(margin)},
              {"t_l", opt(t_l)},
              {"t_r", opt(t_r)},
              {"t_reached", opt(t_reached)},
              {"statement", statement}};
}

Json Certificate::to_json(bool with_timestamp) const {
  Json ns = Json::array();
  for (const auto& [p, v] : norms) ns.push_back(Json{{"p", p.to_json()}, {"value", v}});
  auto opt = [](std::optional<double> v) { return v ? json_number(*v) : Json("vacuous"); };
  Json doc{
      {"version", kCertificateVersion},
      {"tool_version", tool_version()},
      {"verdict", verdict.to_json()},
      {"brackets",
       {{"t_l", opt(t_l_star)},
        {"t_r", opt(t_r_star)},
        {"argmax_p", argmax_p ? argmax_p->to_json() : Json(nullptr)},
        {"argmin_pq", argmin_pq ? Json::array({argmin_pq->first.to_json(), argmin_pq->second.to_json()}) : Json(nullptr)},
        {"semantics", "either T_max = inf or T_max in (T_l, T_r] for every grid pair"}}},
      {"l3_smallness", l3.to_json()},
      {"norm_pair", pair.to_json()},
      {"norms", ns},
      {"constants", constants},
      {"field",
       {{"recipe", field_recipe},
        {"grid", grid.to_json()},
        {"attestation", attestation},
        {"divergence_residual", divergence_residual},
        {"pointwise_norm", "euclidean"}}},
      {"search", search.to_json()},
      {"tolerances",
       {{"boundary_band", search.boundary_band},
        {"equivalence_tolerance", search.equivalence_tolerance},
        {"c_infty_error", constants.value("c_infty_error", 0.0)}}},
  };
  if (with_timestamp) doc["timestamp"] = timestamp;
  return doc;
}

Certificate make_certificate(const GridField& field, const SearchConfig& search, const ConstantsContext& ctx) {
  require(field.solenoidal, ErrorCode::InvalidConfig, "certificates need a field flagged divergence-free");
  require(field.all_finite(), ErrorCode::Domain, "field has non-finite samples");
  Certificate cert;
  cert.search = search;
  cert.grid = field.grid;
  cert.field_recipe = field.recipe;
  cert.divergence_residual = divergence_residual(field);
  cert.constants = Json{{"c_infty", ctx.c_infty()},
                        {"c_infty_error", ctx.c_infty_error()},
                        {"cutoff", ctx.cutoff().to_json()},
                        {"cutoff_hash", ctx.hash()}};
  cert.constants_hash = ctx.hash();
  cert.timestamp = utc_timestamp();
  if (field.recipe.is_object() && field.recipe.contains("sampler"))
    cert.attestation = Recipe::from_json(field.recipe).attestation(field.grid);
  else
    cert.attestation = "no analytic recipe; truncation not attested";

  std::set<LebesgueExponent> exps(search.p_grid.begin(), search.p_grid.end());
  exps.insert(search.q_grid.begin(), search.q_grid.end());
  exps.insert(LebesgueExponent::any(3.0));
  for (const auto& e : exps) cert.norms.emplace_back(e, lp_norm_value(field, e));

  cert.l3 = check_l3_smallness(lookup(cert.norms, LebesgueExponent::any(3.0)), search.l3_p_grid, ctx,
                               search.boundary_band);
  cert.pair = check_norm_pair_from_norms(cert.norms, search, ctx);

  for (const auto& pt : cert.pair.points) {
    const auto& b = pt.bracket;
    if (b.t_l && (!cert.t_l_star || *b.t_l > *cert.t_l_star)) {
      cert.t_l_star = b.t_l;
      cert.argmax_p = b.p;
    }
    if (b.t_r && (!cert.t_r_star || *b.t_r < *cert.t_r_star)) {
      cert.t_r_star = b.t_r;
      cert.argmin_pq = std::make_pair(b.p, b.q);
    }
  }

  Verdict& v = cert.verdict;
  if (cert.l3.success) {
    v.type = VerdictType::GlobalByL3Smallness;
    v.p = cert.l3.best_p;
    v.margin = cert.l3.margin;
    v.statement = "||u0||_L3 is below the smallness threshold at p = " + cert.l3.best_p.to_string() +
                  "; the solution is global";
  } else if (cert.pair.success) {
    v.type = VerdictType::GlobalByNormPair;
    v.p = cert.pair.best->bracket.p;
    v.q = cert.pair.best->bracket.q;
    v.margin = cert.pair.best->log_margin;
    v.t_l = cert.pair.best->bracket.t_l;
    v.t_r = cert.pair.best->bracket.t_r;
    v.statement = "Q^p_q(u0) <= 1/K_0 (equivalently T_r <= T_l) at (p, q) = (" + v.p->to_string() + ", " +
                  v.q->to_string() + "); the solution is global";
  } else if (cert.t_l_star && cert.t_r_star && *cert.t_l_star >= *cert.t_r_star) {
    v.type = VerdictType::GlobalByBracketCrossing;
    v.p = cert.argmax_p;
    v.q = cert.argmin_pq->second;
    v.margin = std::log(*cert.t_l_star / *cert.t_r_star);
    v.t_l = cert.t_l_star;
    v.t_r = cert.t_r_star;
    v.statement = "max T_l over p reaches min T_r over (p, q); a finite T_max would have to exceed the former "
                  "and not exceed the latter, so the solution is global";
  } else {
    v.type = VerdictType::UndeterminedBracket;
    v.t_l = cert.t_l_star;
    v.t_r = cert.t_r_star;
    v.margin = (cert.t_l_star && cert.t_r_star) ? std::log(*cert.t_l_star / *cert.t_r_star) : -kInf;
    v.statement = "either T_max = inf or T_max in (T_l, T_r] with T_l = " + fmt(cert.t_l_star.value_or(0.0)) +
                  " and T_r = " + fmt(cert.t_r_star.value_or(0.0)) +
                  "; surviving past T_r excludes blow-up";
  }
  return cert;
}

}  // namespace nsreg
