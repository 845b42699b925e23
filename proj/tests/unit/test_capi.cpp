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

// Exercises the shared library through its C header only.

#include <doctest.h>
#include <json.hpp>
#include <nsreg/nsreg.h>

#include <cmath>
#include <cstdio>
#include <string>

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  nsreg_string_free(s);
  return out;
}

struct Ctx {
  nsreg_context* ptr = nullptr;
  Ctx() { REQUIRE(nsreg_context_golden(&ptr) == NSREG_OK); }
  ~Ctx() { nsreg_context_free(ptr); }
};

struct Field {
  nsreg_field* ptr = nullptr;
  explicit Field(const std::string& spec) { REQUIRE(nsreg_field_create(spec.c_str(), &ptr) == NSREG_OK); }
  ~Field() { nsreg_field_free(ptr); }
};

const char* kVortex = R"({"recipe": "gaussian_vortex amplitude=0.05", "grid": {"n": 32, "length": 16}})";

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(nsreg_status_name(NSREG_OK)) == "ok");
  CHECK(std::string(nsreg_version()).size() > 0);
  nsreg_field* f = nullptr;
  CHECK(nsreg_field_create(R"({"recipe": "no_such_sampler"})", &f) == NSREG_ERR_INVALID_CONFIG);
  CHECK(f == nullptr);
  const Json err = Json::parse(nsreg_last_error());
  CHECK(err.at("error") == nsreg_status_name(NSREG_ERR_INVALID_CONFIG));
  CHECK(err.at("message").get<std::string>().find("no_such_sampler") != std::string::npos);
  CHECK(nsreg_field_create(nullptr, &f) == NSREG_ERR_NULL_ARGUMENT);
  CHECK(nsreg_field_create("{not json", &f) == NSREG_ERR_INVALID_CONFIG);
  // A Gaussian that does not fit the box is a domain error.
  CHECK(nsreg_field_create(R"({"recipe": "gaussian width=3", "grid": {"n": 32, "length": 8}})", &f) ==
        NSREG_ERR_DOMAIN);
}

TEST_CASE("golden context") {
  Ctx ctx;
  CHECK(nsreg_context_c_infty(ctx.ptr) == doctest::Approx(1.6591972949343248).epsilon(1e-15));
  char* h = nullptr;
  REQUIRE(nsreg_context_hash(ctx.ptr, &h) == NSREG_OK);
  CHECK(take(h) == "6b1c5a194cd15def");
  char* doc = nullptr;
  REQUIRE(nsreg_context_to_json(ctx.ptr, &doc) == NSREG_OK);
  CHECK(Json::parse(take(doc)).contains("c_infty"));
  CHECK(std::isnan(nsreg_context_c_infty(nullptr)));
}

TEST_CASE("fields: norms, info and file round trip") {
  Field f(kVortex);
  double l2 = 0.0, linf = 0.0;
  REQUIRE(nsreg_field_norm(f.ptr, 2.0, &l2) == NSREG_OK);
  REQUIRE(nsreg_field_norm(f.ptr, INFINITY, &linf) == NSREG_OK);
  CHECK(l2 > 0.0);
  CHECK(linf > 0.0);
  CHECK(nsreg_field_norm(f.ptr, 0.5, &l2) == NSREG_ERR_DOMAIN);
  char* info = nullptr;
  REQUIRE(nsreg_field_info(f.ptr, &info) == NSREG_OK);
  const Json j = Json::parse(take(info));
  CHECK(j.at("grid").at("n") == 32);
  CHECK(j.at("solenoidal") == true);

  const std::string path = "capi_roundtrip.field";
  REQUIRE(nsreg_field_write(f.ptr, path.c_str(), 0.25) == NSREG_OK);
  nsreg_field* g = nullptr;
  double t = -1.0;
  REQUIRE(nsreg_field_read(path.c_str(), &g, &t) == NSREG_OK);
  CHECK(t == 0.25);
  double l2b = 0.0;
  nsreg_field_norm(f.ptr, 2.0, &l2);
  nsreg_field_norm(g, 2.0, &l2b);
  CHECK(l2b == l2);
  nsreg_field_free(g);
  std::remove(path.c_str());
  CHECK(nsreg_field_read("does/not/exist.field", &g, &t) == NSREG_ERR_IO);
}

TEST_CASE("certify is deterministic without timestamps") {
  Ctx ctx;
  Field zero(R"({"recipe": "zero", "grid": {"n": 16, "length": 16}})");
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(nsreg_certify(zero.ptr, nullptr, ctx.ptr, 0, &a) == NSREG_OK);
  REQUIRE(nsreg_certify(zero.ptr, "{}", ctx.ptr, 0, &b) == NSREG_OK);
  const std::string sa = take(a), sb = take(b);
  CHECK(sa == sb);
  const Json doc = Json::parse(sa);
  CHECK(doc.at("verdict").at("type") == "GlobalByL3Smallness");
  CHECK(doc.at("constants_hash") == "6b1c5a194cd15def");
  CHECK_FALSE(doc.contains("timestamp"));
  REQUIRE(nsreg_certify(zero.ptr, nullptr, ctx.ptr, 1, &a) == NSREG_OK);
  CHECK(Json::parse(take(a)).contains("timestamp"));
}

TEST_CASE("picard and simulate") {
  Ctx ctx;
  Field f(kVortex);
  char* doc = nullptr;
  REQUIRE(nsreg_picard(f.ptr, R"({"p": 6, "intervals": 8})", ctx.ptr, 0, &doc) == NSREG_OK);
  const Json pj = Json::parse(take(doc));
  CHECK(pj.at("status") == "converged");

  char* manifest = nullptr;
  char* csv = nullptr;
  nsreg_field* fin = nullptr;
  const char* solver = R"({"dt": 0.05, "t_end": 0.2, "grid": {"n": 32, "length": 16}})";
  REQUIRE(nsreg_simulate(f.ptr, solver, R"({"p": 6, "q": 2})", ctx.ptr, 0, &manifest, &csv, &fin) == NSREG_OK);
  const Json m = Json::parse(take(manifest));
  CHECK(m.at("status") == "completed");
  CHECK(m.contains("dichotomy"));
  const std::string table = take(csv);
  CHECK(table.rfind("t,l2,", 0) == 0);
  REQUIRE(fin != nullptr);
  nsreg_field_free(fin);

  CHECK(nsreg_simulate(f.ptr, R"({"dt": 0.5, "t_end": 0.1})", nullptr, ctx.ptr, 0, &manifest, nullptr, nullptr) ==
        NSREG_ERR_INVALID_CONFIG);
}

TEST_CASE("verify a lemma on a small sweep") {
  Ctx ctx;
  const char* sweep = R"({"t_grid": [0.5], "p_grid": [6],
    "fields": [{"recipe": "gaussian amplitude=1 width=1", "grid": {"n": 32, "length": 16}}]})";
  char* doc = nullptr;
  REQUIRE(nsreg_verify_lemma("3.1", sweep, ctx.ptr, 0, &doc) == NSREG_OK);
  const Json j = Json::parse(take(doc));
  CHECK(j.at("pass") == true);
  CHECK(j.at("cases").size() > 0);
  CHECK(nsreg_verify_lemma("9.9", sweep, ctx.ptr, 0, &doc) == NSREG_ERR_INVALID_CONFIG);
}

TEST_CASE("envelope curves") {
  Ctx ctx;
  const char* req = R"({"p": 6, "q": 2, "norm_p": 0.1, "norm_q": 0.05, "points": 8})";
  char* out = nullptr;
  REQUIRE(nsreg_envelope(req, ctx.ptr, "json", 0, &out) == NSREG_OK);
  const Json j = Json::parse(take(out));
  CHECK(j.at("curves").size() == 16);
  REQUIRE(nsreg_envelope(req, ctx.ptr, "csv", 0, &out) == NSREG_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("# tool_version=", 0) == 0);
  CHECK(csv.find("\nkind,t,bound\n") != std::string::npos);
  // The default 64 points stay strictly below t_max.
  REQUIRE(nsreg_envelope(R"({"p": 6, "q": 2, "norm_p": 0.1, "norm_q": 0.05})", ctx.ptr, "json", 0, &out) == NSREG_OK);
  CHECK(Json::parse(take(out)).at("curves").size() == 128);
  CHECK(nsreg_envelope(req, ctx.ptr, "xml", 0, &out) == NSREG_ERR_INVALID_CONFIG);
  CHECK(nsreg_envelope(R"({"p": 6, "q": 2, "norm_p": 0, "norm_q": 0})", ctx.ptr, "json", 0, &out) ==
        NSREG_ERR_DOMAIN);
}
