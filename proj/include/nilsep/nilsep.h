// Copyright 2026 The nilsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the nilsep library. Every call returns a status; on
 * failure nilsep_last_error() describes the cause for the calling thread.
 * Strings returned through char** outputs are owned by the caller and must
 * be released with nilsep_string_free. Integers cross the boundary as
 * decimal strings. */
#ifndef NILSEP_NILSEP_H
#define NILSEP_NILSEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NILSEP_API __declspec(dllexport)
#else
#define NILSEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nilsep_status {
  NILSEP_OK = 0,
  NILSEP_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad option value */
  NILSEP_ERR_PARSE = 2,            /* group spec, element or certificate text */
  NILSEP_ERR_DOMAIN = 3,           /* precondition on the mathematical input */
  NILSEP_ERR_UNSUPPORTED = 4,      /* outside the supported group families */
  NILSEP_ERR_BUDGET = 5,           /* search budget exhausted */
  NILSEP_ERR_INTERNAL = 6
} nilsep_status;

typedef struct nilsep_group nilsep_group;
typedef struct nilsep_subgroup nilsep_subgroup;

NILSEP_API const char* nilsep_version(void);
NILSEP_API const char* nilsep_status_name(nilsep_status s);
/* Message for the last failing call on this thread, "" if none. */
NILSEP_API const char* nilsep_last_error(void);
NILSEP_API void nilsep_string_free(char* s);

/* spec: shorthand (z, z2, z3, free_abelian:d, h3, ut3, ut4), inline JSON or a file path. */
NILSEP_API nilsep_status nilsep_group_open(const char* spec, nilsep_group** out);
NILSEP_API void nilsep_group_free(nilsep_group* g);
NILSEP_API nilsep_status nilsep_group_spec(const nilsep_group* g, char** json_out);
NILSEP_API size_t nilsep_group_hirsch(const nilsep_group* g);

/* gens: comma separated elements, each "[x,y,...]" or a word such as "a b^-1". Empty gives {1}. */
NILSEP_API nilsep_status nilsep_subgroup_new(const nilsep_group* g, const char* gens, nilsep_subgroup** out);
NILSEP_API void nilsep_subgroup_free(nilsep_subgroup* h);

/* JSON {"gcd", "coefficients", "bound", "within_bound", "word_length", "word_bound"}. */
NILSEP_API nilsep_status nilsep_bezout(const char* const* values, size_t n, char** json_out);

/* JSON {"value", "mode", "budget", "certificate"}; value is "> B" past the budget. */
NILSEP_API nilsep_status nilsep_depth(const nilsep_subgroup* h, const char* element, const char* budget,
                                      char** json_out);

/* JSON {"prime", "exponent", "layer", "modulus", "order", "certificate"}. */
NILSEP_API nilsep_status nilsep_separate(const nilsep_subgroup* h, const char* element, char** json_out);

/* Checks a certificate JSON against (H, element); *valid is 0 or 1. */
NILSEP_API nilsep_status nilsep_validate(const nilsep_subgroup* h, const char* element, const char* certificate,
                                         int* valid, char** reason_out);

/* JSON {"norm", "budget", "witnesses"}; radius bounds the ball search. */
NILSEP_API nilsep_status nilsep_norm(const nilsep_subgroup* h, size_t radius, char** json_out);

NILSEP_API nilsep_status nilsep_farb_csv(const nilsep_subgroup* h, size_t n_max, const char* budget, char** csv_out);
NILSEP_API nilsep_status nilsep_sub_csv(const nilsep_group* g, size_t n_max, const char* budget,
                                        size_t max_subgroups, char** csv_out);

/* suite: a preset name or "all"; p = 0 uses the preset defaults. */
NILSEP_API nilsep_status nilsep_verify(const char* suite, long p, int* passed, char** report_out);

#ifdef __cplusplus
}
#endif

#endif
