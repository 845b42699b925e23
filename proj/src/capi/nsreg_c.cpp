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

#include "nsreg/nsreg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "certify/certificate.hpp"
#include "certify/horizons.hpp"
#include "common/error.hpp"
#include "common/json_util.hpp"
#include "constants/riesz_constant.hpp"
#include "fields/field_io.hpp"
#include "fields/norms.hpp"
#include "fields/recipe.hpp"
#include "heatflow/lemma_check.hpp"
#include "mildsolve/dichotomy.hpp"
#include "mildsolve/picard.hpp"
#include "mildsolve/spectral_solver.hpp"

struct nsreg_context {
  nsreg::ConstantsContext ctx;
};

struct nsreg_field {
  nsreg::GridField field;
};

namespace {

using nsreg::ErrorCode;
using nsreg::Json;

thread_local std::string g_last_error;

nsreg_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return NSREG_ERR_DOMAIN;
    case ErrorCode::RefinementFailure: return NSREG_ERR_REFINEMENT;
    case ErrorCode::InvalidConfig: return NSREG_ERR_INVALID_CONFIG;
    case ErrorCode::InvariantViolation: return NSREG_ERR_INVARIANT;
    case ErrorCode::Unsupported: return NSREG_ERR_UNSUPPORTED;
    case ErrorCode::Io: return NSREG_ERR_IO;
  }
  return NSREG_ERR_INTERNAL;
}

nsreg_status record_error(nsreg_status s, const std::string& message) {
  g_last_error = Json{{"error", nsreg_status_name(s)}, {"message", message}}.dump();
  return s;
}

/// Runs `body`, translating exceptions into status codes.
template <class F>
nsreg_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return NSREG_OK;
  } catch (const nsreg::Error& e) {
    return record_error(to_status(e.code()), e.what());
  } catch (const Json::exception& e) {
    return record_error(NSREG_ERR_INVALID_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return record_error(NSREG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record_error(NSREG_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json parse_or_empty(const char* text) {
  if (!text || !*text) return Json::object();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw nsreg::Error(ErrorCode::InvalidConfig, std::string("malformed JSON: ") + e.what());
  }
}

Json stamp(Json doc, const nsreg::ConstantsContext& ctx, bool with_timestamp) {
  doc["tool_version"] = nsreg::tool_version();
  doc["constants_hash"] = ctx.hash();
  if (with_timestamp) doc["timestamp"] = nsreg::utc_timestamp();
  return doc;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

nsreg::GridField field_from_spec(const Json& spec) {
  nsreg::require(spec.is_object(), ErrorCode::InvalidConfig, "field spec must be an object");
  if (spec.contains("file")) return nsreg::read_field(spec.at("file").get<std::string>()).field;
  nsreg::require(spec.contains("recipe"), ErrorCode::InvalidConfig, "field spec needs \"recipe\" or \"file\"");
  const auto recipe = nsreg::Recipe::from_json(spec.at("recipe"));
  const auto grid = spec.contains("grid") ? nsreg::BoxGrid::from_json(spec.at("grid")) : nsreg::BoxGrid{};
  return nsreg::sample_analytic(recipe, grid);
}

nsreg::LebesgueExponent exponent(const Json& j, nsreg::LebesgueExponent::Role role) {
  return nsreg::LebesgueExponent::from_json(j, role);
}

}  // namespace

extern "C" {

const char* nsreg_version(void) {
  static const std::string v = nsreg::tool_version();
  return v.c_str();
}

const char* nsreg_status_name(nsreg_status status) {
  switch (status) {
    case NSREG_OK: return "ok";
    case NSREG_ERR_DOMAIN: return "domain";
    case NSREG_ERR_REFINEMENT: return "refinement-failure";
    case NSREG_ERR_INVALID_CONFIG: return "invalid-config";
    case NSREG_ERR_INVARIANT: return "invariant-violation";
    case NSREG_ERR_UNSUPPORTED: return "unsupported";
    case NSREG_ERR_IO: return "io";
    case NSREG_ERR_NULL_ARGUMENT: return "null-argument";
    case NSREG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nsreg_last_error(void) { return g_last_error.c_str(); }

void nsreg_string_free(char* s) { std::free(s); }

nsreg_status nsreg_context_golden(nsreg_context** out) {
  if (!out) return record_error(NSREG_ERR_NULL_ARGUMENT, "out must not be NULL");
  return guarded([&] { *out = new nsreg_context{nsreg::ConstantsContext::golden()}; });
}

nsreg_status nsreg_context_load(const char* path, nsreg_context** out) {
  if (!out || !path) return record_error(NSREG_ERR_NULL_ARGUMENT, "path and out must not be NULL");
  return guarded([&] { *out = new nsreg_context{nsreg::ConstantsContext::load(path)}; });
}

nsreg_status nsreg_context_compute(const char* cutoff_json, nsreg_context** out) {
  if (!out) return record_error(NSREG_ERR_NULL_ARGUMENT, "out must not be NULL");
  return guarded([&] {
    const Json j = parse_or_empty(cutoff_json);
    const auto cutoff = j.empty() ? nsreg::CutoffSpec{} : nsreg::CutoffSpec::from_json(j);
    *out = new nsreg_context{nsreg::ConstantsContext::compute(cutoff)};
  });
}

nsreg_status nsreg_context_to_json(const nsreg_context* ctx, char** out) {
  if (!ctx || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "ctx and out must not be NULL");
  return guarded([&] {
    Json doc = ctx->ctx.to_json();
    doc["tool_version"] = nsreg::tool_version();
    *out = dup(dump(doc));
  });
}

nsreg_status nsreg_context_hash(const nsreg_context* ctx, char** out) {
  if (!ctx || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "ctx and out must not be NULL");
  return guarded([&] { *out = dup(ctx->ctx.hash()); });
}

double nsreg_context_c_infty(const nsreg_context* ctx) { return ctx ? ctx->ctx.c_infty() : std::nan(""); }

void nsreg_context_free(nsreg_context* ctx) { delete ctx; }

nsreg_status nsreg_field_create(const char* spec_json, nsreg_field** out) {
  if (!spec_json || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "spec and out must not be NULL");
  return guarded([&] { *out = new nsreg_field{field_from_spec(parse_or_empty(spec_json))}; });
}

nsreg_status nsreg_field_read(const char* path, nsreg_field** out, double* time) {
  if (!path || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "path and out must not be NULL");
  return guarded([&] {
    auto s = nsreg::read_field(path);
    if (time) *time = s.time;
    *out = new nsreg_field{std::move(s.field)};
  });
}

nsreg_status nsreg_field_write(const nsreg_field* field, const char* path, double time) {
  if (!field || !path) return record_error(NSREG_ERR_NULL_ARGUMENT, "field and path must not be NULL");
  return guarded([&] { nsreg::write_field(path, field->field, time); });
}

nsreg_status nsreg_field_info(const nsreg_field* field, char** out) {
  if (!field || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "field and out must not be NULL");
  return guarded([&] {
    const auto& f = field->field;
    *out = dup(dump(Json{{"grid", f.grid.to_json()},
                         {"recipe", f.recipe},
                         {"solenoidal", f.solenoidal},
                         {"periodic", f.periodic},
                         {"raw_divergence", f.raw_divergence}}));
  });
}

nsreg_status nsreg_field_norm(const nsreg_field* field, double p, double* out) {
  if (!field || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "field and out must not be NULL");
  return guarded([&] {
    const auto e = std::isinf(p) ? nsreg::LebesgueExponent::infinity() : nsreg::LebesgueExponent::any(p);
    *out = nsreg::lp_norm_value(field->field, e);
  });
}

void nsreg_field_free(nsreg_field* field) { delete field; }

nsreg_status nsreg_certify(const nsreg_field* field, const char* search_json, const nsreg_context* ctx,
                           int with_timestamp, char** out) {
  if (!field || !ctx || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "field, ctx and out must not be NULL");
  return guarded([&] {
    const Json j = parse_or_empty(search_json);
    const auto search = j.empty() ? nsreg::SearchConfig::standard() : nsreg::SearchConfig::from_json(j);
    const auto cert = nsreg::make_certificate(field->field, search, ctx->ctx);
    *out = dup(dump(stamp(cert.to_json(false), ctx->ctx, with_timestamp != 0)));
  });
}

nsreg_status nsreg_verify_lemma(const char* lemma, const char* sweep_json, const nsreg_context* ctx,
                                int with_timestamp, char** out) {
  if (!lemma || !ctx || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "lemma, ctx and out must not be NULL");
  return guarded([&] {
    const auto id = nsreg::parse_lemma_id(lemma);
    const Json j = parse_or_empty(sweep_json);
    const auto sweep = j.empty() ? nsreg::LemmaSweep::standard() : nsreg::LemmaSweep::from_json(j);
    const auto report = nsreg::verify_lemma(id, sweep, ctx->ctx);
    *out = dup(dump(stamp(report.to_json(), ctx->ctx, with_timestamp != 0)));
  });
}

nsreg_status nsreg_picard(const nsreg_field* field, const char* config_json, const nsreg_context* ctx,
                          int with_timestamp, char** out) {
  if (!field || !ctx || !out) return record_error(NSREG_ERR_NULL_ARGUMENT, "field, ctx and out must not be NULL");
  return guarded([&] {
    const Json j = parse_or_empty(config_json);
    const auto p = j.contains("p") ? exponent(j.at("p"), nsreg::LebesgueExponent::Role::P)
                                   : nsreg::LebesgueExponent::any(6.0);
    const auto cfg = nsreg::PicardConfig::from_json(j);
    const auto res = nsreg::picard_solve(field->field, p, cfg, ctx->ctx);
    Json doc = res.to_json();
    doc["config"] = cfg.to_json();
    doc["field"] = Json{{"recipe", field->field.recipe}, {"grid", field->field.grid.to_json()}};
    *out = dup(dump(stamp(doc, ctx->ctx, with_timestamp != 0)));
  });
}

nsreg_status nsreg_simulate(const nsreg_field* field, const char* solver_json, const char* bracket_json,
                            const nsreg_context* ctx, int with_timestamp, char** manifest, char** csv,
                            nsreg_field** final_field) {
  if (!field || !ctx || !manifest)
    return record_error(NSREG_ERR_NULL_ARGUMENT, "field, ctx and manifest must not be NULL");
  return guarded([&] {
    Json j = parse_or_empty(solver_json);
    if (!j.contains("grid")) j["grid"] = field->field.grid.to_json();
    const auto cfg = nsreg::SolverConfig::from_json(j);
    const auto& u0 = field->field;
    const auto run = nsreg::spectral_run(u0, cfg);
    Json doc = run.manifest();
    doc["field"] = Json{{"recipe", u0.recipe}, {"grid", u0.grid.to_json()}};

    const Json bj = parse_or_empty(bracket_json);
    if (!bj.empty()) {
      using Role = nsreg::LebesgueExponent::Role;
      const auto p = exponent(bj.at("p"), Role::P);
      const auto q = exponent(bj.at("q"), Role::Q);
      const auto bracket = nsreg::TimeBracket::make(p, q, nsreg::lp_norm_value(u0, p), nsreg::lp_norm_value(u0, q),
                                                    ctx->ctx);
      std::optional<nsreg::SolverRun> wide;
      if (bj.contains("box_length")) {
        // Same spacing, larger box, resampled from the analytic recipe.
        const double length = bj.at("box_length").get<double>();
        nsreg::require(length > u0.grid.length, ErrorCode::InvalidConfig, "box_length must exceed the run's box");
        int n = static_cast<int>(std::lround(u0.grid.n * length / u0.grid.length / 2.0)) * 2;
        nsreg::BoxGrid g{n, length};
        const auto wide_u0 = nsreg::sample_analytic(nsreg::Recipe::from_json(u0.recipe), g);
        auto wc = cfg;
        wc.grid = g;
        wc.refinement.clear();
        wide = nsreg::spectral_run(wide_u0, wc);
      }
      doc["dichotomy"] = nsreg::dichotomy_verdict(run, bracket, ctx->ctx, wide ? &*wide : nullptr).to_json();
    }
    const std::string table = run.csv();
    *manifest = dup(dump(stamp(doc, ctx->ctx, with_timestamp != 0)));
    if (csv) *csv = dup(table);
    if (final_field) *final_field = new nsreg_field{run.final_field};
  });
}

nsreg_status nsreg_envelope(const char* request_json, const nsreg_context* ctx, const char* format,
                            int with_timestamp, char** out) {
  if (!request_json || !ctx || !out)
    return record_error(NSREG_ERR_NULL_ARGUMENT, "request, ctx and out must not be NULL");
  return guarded([&] {
    using Role = nsreg::LebesgueExponent::Role;
    const Json j = parse_or_empty(request_json);
    const std::string fmt = format ? format : "json";
    nsreg::require(fmt == "json" || fmt == "csv", ErrorCode::InvalidConfig, "format must be json or csv");
    const auto p = exponent(j.at("p"), Role::P);
    const auto q = exponent(j.at("q"), Role::Q);
    double norm_p = 0.0, norm_q = 0.0;
    if (j.contains("field")) {
      const auto f = field_from_spec(j.at("field"));
      norm_p = nsreg::lp_norm_value(f, p);
      norm_q = nsreg::lp_norm_value(f, q);
    } else {
      norm_p = j.at("norm_p").get<double>();
      norm_q = j.at("norm_q").get<double>();
    }
    const int points = j.value("points", 64);
    const double span = j.value("decay_span", 10.0);
    nsreg::require(points >= 2, ErrorCode::InvalidConfig, "points must be >= 2");
    nsreg::require(span > 1.0, ErrorCode::InvalidConfig, "decay_span must exceed 1");
    const auto bracket = nsreg::TimeBracket::make(p, q, norm_p, norm_q, ctx->ctx);
    nsreg::require(bracket.t_r.has_value(), ErrorCode::Domain, "zero data has no finite T_r");
    const double t_r = *bracket.t_r;
    const double t_max = j.contains("t_max") ? j.at("t_max").get<double>() : t_r;
    nsreg::require(t_max > 0.0, ErrorCode::Domain, "t_max must be positive");

    Json rows = Json::array();
    std::ostringstream table;
    table.precision(17);
    table << "kind,t,bound\n";
    // Decay: log-spaced on (T_r, span T_r], the left end nudged off the pole.
    for (int i = 0; i < points; ++i) {
      const double t = t_r * std::pow(span, (i + 1.0) / points);
      const double b = nsreg::decay_envelope(t, p, q, norm_q, ctx->ctx);
      rows.push_back(Json{{"kind", "decay"}, {"t", t}, {"bound", b}});
      table << "decay," << t << ',' << b << '\n';
    }
    // Blow-up floor on [0, t_max): the gap to t_max shrinks geometrically to 1e-6 t_max.
    for (int i = 0; i < points; ++i) {
      const double t = i == 0 ? 0.0 : t_max * (1.0 - std::pow(10.0, -6.0 * i / (points - 1)));
      const double b = nsreg::blowup_floor(t, p, t_max, ctx->ctx);
      rows.push_back(Json{{"kind", "blowup-floor"}, {"t", t}, {"bound", b}});
      table << "blowup-floor," << t << ',' << b << '\n';
    }
    Json doc{{"bracket", bracket.to_json()},
             {"t_max", t_max},
             {"blowup_constant", nsreg::blowup_constant(p, ctx->ctx)},
             {"curves", rows}};
    doc = stamp(doc, ctx->ctx, with_timestamp != 0);
    if (fmt == "json") {
      *out = dup(dump(doc));
    } else {
      std::string header = "# tool_version=" + nsreg::tool_version() + " constants_hash=" + ctx->ctx.hash();
      if (with_timestamp) header += " timestamp=" + doc.at("timestamp").get<std::string>();
      *out = dup(header + "\n" + table.str());
    }
  });
}

}  // extern "C"
