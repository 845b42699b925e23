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

/* C interface to the nsreg library.
 *
 * Objects are opaque handles released with the matching *_free call.
 * Every fallible call returns an nsreg_status; on failure the thread-local
 * nsreg_last_error() holds a JSON object {"error": name, "message": text}.
 * Strings returned through char** are heap allocated and released with
 * nsreg_string_free. Structured inputs and outputs are JSON text.
 */
#ifndef NSREG_NSREG_H
#define NSREG_NSREG_H

#include <stddef.h>

#if defined(NSREG_BUILDING_LIBRARY)
#define NSREG_API __attribute__((visibility("default")))
#else
#define NSREG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsreg_status {
  NSREG_OK = 0,
  NSREG_ERR_DOMAIN = 1,
  NSREG_ERR_REFINEMENT = 2,
  NSREG_ERR_INVALID_CONFIG = 3,
  NSREG_ERR_INVARIANT = 4,
  NSREG_ERR_UNSUPPORTED = 5,
  NSREG_ERR_IO = 6,
  NSREG_ERR_NULL_ARGUMENT = 7,
  NSREG_ERR_INTERNAL = 99
} nsreg_status;

typedef struct nsreg_context nsreg_context; /* C_inf and its cutoff */
typedef struct nsreg_field nsreg_field;     /* sampled velocity field */

NSREG_API const char* nsreg_version(void);
NSREG_API const char* nsreg_status_name(nsreg_status status);
/* Error document of the last failed call on this thread, "" if none. */
NSREG_API const char* nsreg_last_error(void);
NSREG_API void nsreg_string_free(char* s);

/* Constants. */
NSREG_API nsreg_status nsreg_context_golden(nsreg_context** out);
NSREG_API nsreg_status nsreg_context_load(const char* path, nsreg_context** out);
/* Computes C_inf from a cutoff document (NULL or "{}" for the default). */
NSREG_API nsreg_status nsreg_context_compute(const char* cutoff_json, nsreg_context** out);
NSREG_API nsreg_status nsreg_context_to_json(const nsreg_context* ctx, char** out);
NSREG_API nsreg_status nsreg_context_hash(const nsreg_context* ctx, char** out);
NSREG_API double nsreg_context_c_infty(const nsreg_context* ctx);
NSREG_API void nsreg_context_free(nsreg_context* ctx);

/* Fields. `spec_json` is {"recipe": text or object, "grid": {"n", "length"}}
 * or {"file": path}. */
NSREG_API nsreg_status nsreg_field_create(const char* spec_json, nsreg_field** out);
NSREG_API nsreg_status nsreg_field_read(const char* path, nsreg_field** out, double* time);
NSREG_API nsreg_status nsreg_field_write(const nsreg_field* field, const char* path, double time);
/* {"grid", "recipe", "solenoidal", "periodic", "raw_divergence"} */
NSREG_API nsreg_status nsreg_field_info(const nsreg_field* field, char** out);
/* p may be INFINITY. */
NSREG_API nsreg_status nsreg_field_norm(const nsreg_field* field, double p, double* out);
NSREG_API void nsreg_field_free(nsreg_field* field);

/* Operations. Every emitted document carries "tool_version" and
 * "constants_hash"; `with_timestamp` = 0 drops wall-clock fields so that
 * identical inputs give byte-identical output. */
NSREG_API nsreg_status nsreg_certify(const nsreg_field* field, const char* search_json, const nsreg_context* ctx,
                                     int with_timestamp, char** out);
NSREG_API nsreg_status nsreg_verify_lemma(const char* lemma, const char* sweep_json, const nsreg_context* ctx,
                                          int with_timestamp, char** out);
NSREG_API nsreg_status nsreg_picard(const nsreg_field* field, const char* config_json, const nsreg_context* ctx,
                                    int with_timestamp, char** out);
/* Solver run. `bracket_json` ({"p", "q"}) may be NULL; when given the
 * manifest gains a "dichotomy" record. `csv` and `final_field` may be NULL. */
NSREG_API nsreg_status nsreg_simulate(const nsreg_field* field, const char* solver_json, const char* bracket_json,
                                      const nsreg_context* ctx, int with_timestamp, char** manifest, char** csv,
                                      nsreg_field** final_field);
/* Decay envelope and blow-up floor curves; `format` is "json" or "csv". */
NSREG_API nsreg_status nsreg_envelope(const char* request_json, const nsreg_context* ctx, const char* format,
                                      int with_timestamp, char** out);

#ifdef __cplusplus
}
#endif

#endif /* NSREG_NSREG_H */
