/* Copyright 2026 The salp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * at http://www.apache.org/licenses/LICENSE-2.0
 */
#ifndef SALP_SALP_H_
#define SALP_SALP_H_

#include <stddef.h>

#if defined(SALP_BUILDING_LIBRARY)
#define SALP_API __attribute__((visibility("default")))
#else
#define SALP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum salp_status {
  SALP_OK = 0,
  SALP_NO_SCHEDULE = 1, /* analysis-negative; the output is still set */
  SALP_ERR_STRUCTURAL = 2,
  SALP_ERR_SYNTAX = 3,
  SALP_ERR_SEMANTIC = 4,
  SALP_ERR_PRECISION = 5,
  SALP_ERR_BUDGET = 6,
  SALP_ERR_TRANSFORM = 7,
  SALP_ERR_INTEGER_VALIDITY = 8,
  SALP_ERR_INVALID_ARGUMENT = 9,
  SALP_ERR_IO = 10,
  SALP_ERR_INTERNAL = 11,
  SALP_CHECK_FAILED = 12 /* verify found a failing check; the output is still set */
} salp_status;

typedef struct salp_program salp_program;
typedef struct salp_config salp_config;

SALP_API const char* salp_status_name(salp_status s);
/* Message of the last failure on this thread; empty when none. */
SALP_API const char* salp_last_error(void);
/* Strings returned through char** outputs are freed with this. */
SALP_API void salp_string_free(char* s);

/* path may be NULL: then SALP_CONFIG names the file, else defaults apply. */
SALP_API salp_status salp_config_load(const char* path, salp_config** out);
/* Overrides from a JSON object, e.g. {"bound": 16, "n_grid": [1, 2]}. */
SALP_API salp_status salp_config_set_json(salp_config* cfg, const char* json);
SALP_API salp_status salp_config_to_json(const salp_config* cfg, char** out);
SALP_API void salp_config_free(salp_config* cfg);

SALP_API salp_status salp_program_parse(const char* text, salp_program** out);
SALP_API void salp_program_free(salp_program* prog);
/* Canonical DSL, or the JSON IR when as_json is nonzero. */
SALP_API salp_status salp_program_print(const salp_program* prog, int as_json, char** out);

/* JSON reports; all carry a schema_version field. */
SALP_API salp_status salp_analyze(const salp_program* prog, const salp_config* cfg, char** out);
SALP_API salp_status salp_schedule(const salp_program* prog, const salp_config* cfg, char** out);
/* schedule: comma-separated components over the nest's variables, or NULL
 * for automatic selection. */
SALP_API salp_status salp_transform(const salp_program* prog, const salp_config* cfg, const char* schedule,
                                    int dump_cad, char** out);
/* names[i] labels texts[i]. */
SALP_API salp_status salp_verify(const char* const* names, const char* const* texts, size_t count,
                                 const salp_config* cfg, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SALP_SALP_H_ */
