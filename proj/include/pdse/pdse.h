/*
 * Copyright 2026 The pdse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file pdse.h
 * @brief C interface to the photonic link design-space explorer.
 *
 * Conventions:
 *  - Every fallible call returns a pdse_status. On failure the message is
 *    available from pdse_last_error() on the calling thread until the next
 *    call on that thread.
 *  - Strings returned through char** are heap copies owned by the caller
 *    and released with pdse_free().
 *  - Results are JSON documents unless a format argument says otherwise.
 *  - A pdse_model may be queried from several threads at once, but
 *    pdse_model_set() and pdse_calibrate() need exclusive access.
 */

#ifndef PDSE_PDSE_H
#define PDSE_PDSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(PDSE_BUILDING_LIBRARY)
#define PDSE_API __attribute__((visibility("default")))
#else
#define PDSE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdse_status {
  PDSE_OK = 0,
  PDSE_ERR_ARGUMENT = 1,   /* null pointer, unknown name, malformed request */
  PDSE_ERR_CONFIG = 2,     /* unreadable or invalid configuration */
  PDSE_ERR_DOMAIN = 3,     /* value outside a model's domain */
  PDSE_ERR_INFEASIBLE = 4, /* no duplet satisfies the power budget */
  PDSE_ERR_NUMERICAL = 5,
  PDSE_ERR_IO = 6,
  PDSE_ERR_INTERNAL = 7
} pdse_status;

typedef enum pdse_format {
  PDSE_FORMAT_JSON = 0,
  PDSE_FORMAT_CSV = 1,
  PDSE_FORMAT_TEXT = 2
} pdse_format;

typedef enum pdse_secded_status {
  PDSE_SECDED_CLEAN = 0,
  PDSE_SECDED_CORRECTED = 1,
  PDSE_SECDED_UNCORRECTABLE = 2
} pdse_secded_status;

typedef struct pdse_model pdse_model;

/* Names are the configuration spellings: scheme "ook", "pam4_ss",
 * "pam4_edac", "pam4_odac"; profile "clos", "swift"; goal "balanced",
 * "ber_optimal". er_db NaN selects the scheme's configured ER. */
typedef struct pdse_query {
  const char* scheme;
  const char* profile;
  const char* goal;
  double er_db;
} pdse_query;

PDSE_API const char* pdse_version(void);
PDSE_API const char* pdse_last_error(void);
PDSE_API const char* pdse_status_name(pdse_status s);
PDSE_API void pdse_free(void* p);

/* Model lifetime. create() materializes the built-in defaults. */
PDSE_API pdse_status pdse_model_create(pdse_model** out);
PDSE_API pdse_status pdse_model_load(const char* ini_path, pdse_model** out);
PDSE_API pdse_status pdse_model_parse(const char* ini_text, pdse_model** out);
PDSE_API void pdse_model_destroy(pdse_model* m);
PDSE_API pdse_status pdse_model_set(pdse_model* m, const char* section, const char* key, const char* value);
PDSE_API pdse_status pdse_model_to_ini(const pdse_model* m, char** out);

/* Minimum-slack feasible duplet as a DesignPoint record. */
PDSE_API pdse_status pdse_optimize(const pdse_model* m, const pdse_query* q, char** out);
/* One forced duplet; infeasible points are returned, not reported as errors. */
PDSE_API pdse_status pdse_evaluate(const pdse_model* m, const pdse_query* q, int n_lambda, double baud_gbaud,
                                   char** out);
/* Every duplet ranked: feasible by slack, then infeasible by slack. */
PDSE_API pdse_status pdse_frontier(const pdse_model* m, const pdse_query* q, char** out);
/* Checks a DesignPoint record against the model: reparses it, re-evaluates
 * its duplet and returns {"loaded":..., "recomputed":..., "consistent":bool}. */
PDSE_API pdse_status pdse_report(const pdse_model* m, const char* design_json, char** out);

/* request: {"goals":[...], "profiles":[...], "schemes":[...], "er_list":[...]};
 * every key is optional and defaults to all values / each scheme's ER list. */
PDSE_API pdse_status pdse_sweep(const pdse_model* m, const char* request_json, pdse_format fmt, char** out);

PDSE_API pdse_status pdse_ber(const pdse_model* m, const char* scheme, const char* profile, int n_lambda,
                              double baud_gbaud, char** out);
PDSE_API pdse_status pdse_ledger(const pdse_model* m, const char* scheme, int n_lambda, char** out);

/* options: {"profile","scheme","goal","er_db","injection_rate" or
 * "injection_rates":[...], "pattern","seed","n_lambda","baud_gbaud",
 * "design": DesignPoint}. Without a design or forced duplet the optimum is
 * searched first. One rate gives a SimReport; a ladder gives
 * {"runs":[...], "ladder_csv": "..."}. */
PDSE_API pdse_status pdse_simulate(const pdse_model* m, const char* options_json, char** out);
/* options: {"schemes":[...], "profile","goal","injection_rate","seed","pattern"}. */
PDSE_API pdse_status pdse_compare_variants(const pdse_model* m, const char* options_json, char** out);

/* Fits the open switches against golden_balanced.csv and golden_ber_optimal.csv in
 * golden_dir and replaces the model's configuration with the fitted one. */
PDSE_API pdse_status pdse_calibrate(pdse_model* m, const char* golden_dir, char** report_out);

/* Run manifest for a verb: args and outputs are JSON (object, array of strings). */
PDSE_API pdse_status pdse_manifest(const pdse_model* m, const char* verb, const char* args_json,
                                   const char* outputs_json, char** out);

PDSE_API pdse_status pdse_secded_encode(uint64_t word, uint64_t* data_out, uint8_t* check_out);
PDSE_API pdse_status pdse_secded_decode(uint64_t data, uint8_t check, uint64_t* word_out,
                                        pdse_secded_status* status_out, int* corrected_bit_out);
PDSE_API pdse_status pdse_fec_threshold(int packet_bits, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PDSE_PDSE_H */
