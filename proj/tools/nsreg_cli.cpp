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

// nsreg command-line front end. Talks to the library only through the C API.
//
//   nsreg <command> [--config doc.json] [--set key=value]... [--output path]
//
// Each command reads one JSON document; --set overrides a key addressed by a
// dotted path (the value is parsed as JSON, falling back to a string).

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsreg/nsreg.h"

namespace {

using Json = nlohmann::json;

struct Failure {
  int status;
  std::string message;
};

[[noreturn]] void fail(int status, const std::string& message) { throw Failure{status, message}; }

void check(nsreg_status s) {
  if (s == NSREG_OK) return;
  std::string doc = nsreg_last_error();
  std::string message = doc;
  try {
    message = Json::parse(doc).at("message").get<std::string>();
  } catch (...) {
  }
  fail(s, message);
}

struct StringDeleter {
  void operator()(char* p) const { nsreg_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ContextDeleter {
  void operator()(nsreg_context* p) const { nsreg_context_free(p); }
};
struct FieldDeleter {
  void operator()(nsreg_field* p) const { nsreg_field_free(p); }
};
using Context = std::unique_ptr<nsreg_context, ContextDeleter>;
using Field = std::unique_ptr<nsreg_field, FieldDeleter>;

std::string take(char* p) {
  CString owned(p);
  return owned ? std::string(owned.get()) : std::string();
}

Json read_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) fail(NSREG_ERR_IO, "cannot open config " + path);
  try {
    Json j = Json::parse(in);
    if (!j.is_object()) fail(NSREG_ERR_INVALID_CONFIG, "config document must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    fail(NSREG_ERR_INVALID_CONFIG, std::string("malformed config: ") + e.what());
  }
}

void apply_override(Json& doc, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) fail(NSREG_ERR_INVALID_CONFIG, "--set expects key=value, got " + kv);
  const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error&) {
    value = text;
  }
  std::string pointer;
  std::stringstream ks(key);
  for (std::string part; std::getline(ks, part, '.');) {
    if (part.empty()) fail(NSREG_ERR_INVALID_CONFIG, "empty path component in --set " + key);
    pointer += "/" + part;
  }
  doc[Json::json_pointer(pointer)] = value;
}

/// Writes every (path, content) pair to a temporary sibling, then renames them
/// all, so a failure leaves no partial output behind.
void write_atomically(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) std::remove(t.c_str());
  };
  for (const auto& [path, content] : files) {
    const std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    temps.push_back(tmp);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      fail(NSREG_ERR_IO, "cannot write " + path);
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    std::filesystem::rename(temps[i], files[i].first, ec);
    if (ec) {
      cleanup();
      fail(NSREG_ERR_IO, "cannot rename " + temps[i] + ": " + ec.message());
    }
  }
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty() || output == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_atomically({{output, content}});
  }
}

Context load_context(const Json& doc) {
  nsreg_context* raw = nullptr;
  if (doc.contains("constants")) {
    const auto& c = doc.at("constants");
    if (!c.is_string()) fail(NSREG_ERR_INVALID_CONFIG, "\"constants\" must be a path");
    check(nsreg_context_load(c.get<std::string>().c_str(), &raw));
  } else {
    check(nsreg_context_golden(&raw));
  }
  return Context(raw);
}

Field load_field(const Json& doc) {
  if (!doc.contains("field")) fail(NSREG_ERR_INVALID_CONFIG, "config needs a \"field\" section");
  nsreg_field* raw = nullptr;
  check(nsreg_field_create(doc.at("field").dump().c_str(), &raw));
  return Field(raw);
}

const char* section(const Json& doc, const char* key, std::string& storage) {
  storage = doc.contains(key) ? doc.at(key).dump() : std::string();
  return storage.empty() ? nullptr : storage.c_str();
}

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::string output;
  std::string format = "json";
  std::string lemma;
  bool no_timestamp = false;
};

Json document(const Options& o) {
  Json doc = read_config(o.config);
  for (const auto& kv : o.overrides) apply_override(doc, kv);
  return doc;
}

void run_constants(const Options& o) {
  Json doc = document(o);
  std::string cutoff;
  nsreg_context* raw = nullptr;
  check(nsreg_context_compute(section(doc, "cutoff", cutoff), &raw));
  Context ctx(raw);
  emit(o.output, take([&] {
         char* s = nullptr;
         check(nsreg_context_to_json(ctx.get(), &s));
         return s;
       }()));
}

void run_certify(const Options& o) {
  Json doc = document(o);
  if (!doc.contains("field")) fail(NSREG_ERR_INVALID_CONFIG, "certify needs a \"field\" section");
  Context ctx = load_context(doc);
  Field field = load_field(doc);
  std::string search;
  char* out = nullptr;
  check(nsreg_certify(field.get(), section(doc, "search", search), ctx.get(), !o.no_timestamp, &out));
  emit(o.output, take(out));
}

void run_picard(const Options& o) {
  Json doc = document(o);
  if (!doc.contains("field")) fail(NSREG_ERR_INVALID_CONFIG, "picard needs a \"field\" section");
  Context ctx = load_context(doc);
  Field field = load_field(doc);
  std::string cfg;
  char* out = nullptr;
  check(nsreg_picard(field.get(), section(doc, "picard", cfg), ctx.get(), !o.no_timestamp, &out));
  emit(o.output, take(out));
}

void run_simulate(const Options& o) {
  Json doc = document(o);
  if (!doc.contains("field")) fail(NSREG_ERR_INVALID_CONFIG, "simulate needs a \"field\" section");
  if (!doc.contains("solver") || !doc.at("solver").is_object())
    fail(NSREG_ERR_INVALID_CONFIG, "simulate needs a \"solver\" object");
  const Json& s = doc.at("solver");
  const double dt = s.value("dt", 1e-2), t_end = s.value("t_end", 1.0), t_start = s.value("t_start", 0.0);
  if (!(dt > 0.0)) fail(NSREG_ERR_INVALID_CONFIG, "solver.dt must be positive");
  if (!(t_end - t_start >= dt)) fail(NSREG_ERR_INVALID_CONFIG, "solver.t_end - t_start must be at least solver.dt");
  Context ctx = load_context(doc);
  Field field = load_field(doc);
  std::string solver, bracket;
  char *manifest = nullptr, *csv = nullptr;
  nsreg_field* final_raw = nullptr;
  const bool to_files = !o.output.empty() && o.output != "-";
  check(nsreg_simulate(field.get(), section(doc, "solver", solver), section(doc, "bracket", bracket), ctx.get(),
                       !o.no_timestamp, &manifest, &csv, to_files ? &final_raw : nullptr));
  Field final_field(final_raw);
  std::string m = take(manifest), table = take(csv);
  if (!to_files) {
    emit("", o.format == "csv" ? table : m);
    return;
  }
  // Prefix output: <out>.json, <out>.csv and the restart file <out>.field.
  const std::string restart = o.output + ".field";
  Json man = Json::parse(m);
  const double t_reached = man.value("t_reached", 0.0);
  check(nsreg_field_write(final_field.get(), (restart + ".tmp").c_str(), t_reached));
  try {
    write_atomically({{o.output + ".json", m}, {o.output + ".csv", table}});
  } catch (...) {
    std::remove((restart + ".tmp").c_str());
    throw;
  }
  std::error_code ec;
  std::filesystem::rename(restart + ".tmp", restart, ec);
  if (ec) fail(NSREG_ERR_IO, "cannot write " + restart);
}

void run_verify(const Options& o) {
  Json doc = document(o);
  std::string lemma = o.lemma.empty() ? doc.value("lemma", std::string("all")) : o.lemma;
  Context ctx = load_context(doc);
  std::string sweep;
  const char* sw = section(doc, "sweep", sweep);
  std::vector<std::string> ids = lemma == "all" ? std::vector<std::string>{"2.1", "3.1", "3.2", "3.3"}
                                                : std::vector<std::string>{lemma};
  Json reports = Json::array();
  bool pass = true;
  for (const auto& id : ids) {
    char* out = nullptr;
    check(nsreg_verify_lemma(id.c_str(), sw, ctx.get(), !o.no_timestamp, &out));
    Json r = Json::parse(take(out));
    pass = pass && r.value("pass", false);
    reports.push_back(std::move(r));
  }
  Json result = ids.size() == 1 ? reports.front() : Json{{"pass", pass}, {"reports", reports}};
  emit(o.output, result.dump(2) + "\n");
}

void run_envelope(const Options& o) {
  Json doc = document(o);
  if (!doc.contains("envelope")) fail(NSREG_ERR_INVALID_CONFIG, "envelope needs an \"envelope\" section");
  Json req = doc.at("envelope");
  if (doc.contains("field") && !req.contains("field")) req["field"] = doc.at("field");
  for (const char* key : {"p", "q"})
    if (!req.contains(key)) fail(NSREG_ERR_INVALID_CONFIG, std::string("envelope needs \"") + key + "\"");
  Context ctx = load_context(doc);
  char* out = nullptr;
  check(nsreg_envelope(req.dump().c_str(), ctx.get(), o.format.c_str(), !o.no_timestamp, &out));
  emit(o.output, take(out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nsreg: regularity certificates and mild-solution solvers for 3-D Navier-Stokes"};
  app.set_version_flag("--version", std::string(nsreg_version()));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", o.config, "JSON config document");
    sub->add_option("-s,--set", o.overrides, "override a config key: dotted.key=value");
    sub->add_option("-o,--output", o.output, "output path (simulate: file prefix); stdout when absent");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit wall-clock fields from emitted documents");
  };
  struct Entry {
    const char* name;
    const char* help;
    void (*fn)(const Options&);
  };
  const Entry entries[] = {
      {"constants", "compute C_inf and write a constants document", run_constants},
      {"certify", "emit a regularity certificate for a field", run_certify},
      {"simulate", "run the pseudo-spectral solver", run_simulate},
      {"picard", "iterate the mild-form map on the contraction horizon", run_picard},
      {"verify-lemmas", "check the kernel estimates on a sweep", run_verify},
      {"envelope", "decay envelope and blow-up floor curves", run_envelope},
  };
  std::vector<std::pair<CLI::App*, void (*)(const Options&)>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    common(sub);
    subs.emplace_back(sub, e.fn);
  }
  subs[2].first->add_option("-f,--format", o.format, "stdout format without --output: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  subs[4].first->add_option("-l,--lemma", o.lemma, "riesz|heat|heat-gradient|heat-riesz-gradient, 2.1|3.1|3.2|3.3 or all");
  subs[5].first->add_option("-f,--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    for (const auto& [sub, fn] : subs)
      if (sub->parsed()) fn(o);
  } catch (const Failure& f) {
    std::cerr << Json{{"error", nsreg_status_name(static_cast<nsreg_status>(f.status))}, {"message", f.message}}.dump()
              << '\n';
    return f.status;
  } catch (const Json::exception& e) {
    std::cerr << Json{{"error", "invalid-config"}, {"message", e.what()}}.dump() << '\n';
    return NSREG_ERR_INVALID_CONFIG;
  }
  return 0;
}
