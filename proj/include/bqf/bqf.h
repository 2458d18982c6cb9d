#ifndef BQF_BQF_H
#define BQF_BQF_H

/* C interface to the biquadratic field library.
 *
 * Integers cross the boundary as decimal strings. Every function returning a
 * status leaves a message in the context on failure (bqf_last_error). Strings
 * handed out through char** parameters belong to the caller and are released
 * with bqf_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(BQF_BUILDING_LIBRARY)
#define BQF_API __attribute__((visibility("default")))
#else
#define BQF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bqf_status {
    BQF_OK = 0,
    BQF_E_INVALID_ARGUMENT = 1,
    BQF_E_INCONSISTENT = 2,
    BQF_E_CLASS_NUMBER_NOT_TWO = 3,
    BQF_E_FAMILY_NOT_COVERED = 4,
    BQF_E_NOT_COMPLETELY_SPLIT = 5,
    BQF_E_SEARCH_EXHAUSTED = 6,
    BQF_E_PARSE = 7,
    BQF_E_INTERNAL = 8
} bqf_status;

typedef struct bqf_context bqf_context;
typedef struct bqf_field bqf_field;
typedef struct bqf_certificate bqf_certificate;

BQF_API const char* bqf_version(void);
BQF_API const char* bqf_status_name(bqf_status status);

BQF_API bqf_context* bqf_context_new(void);
BQF_API void bqf_context_free(bqf_context* ctx);
/* Message of the last failed call on this context; "" if none. */
BQF_API const char* bqf_last_error(const bqf_context* ctx);
/* 0 means one worker. Results never depend on the worker count. */
BQF_API bqf_status bqf_context_set_workers(bqf_context* ctx, unsigned workers);
/* Largest witness prime tried by bqf_certificate_build (default 10^9). */
BQF_API bqf_status bqf_context_set_search_limit(bqf_context* ctx, const char* limit);

BQF_API void bqf_string_free(char* s);

/* JSON descriptions of Q(sqrt m) and Q(sqrt a, sqrt b). */
BQF_API bqf_status bqf_qf_info(bqf_context* ctx, const char* m, char** out_json);
BQF_API bqf_status bqf_bq_info(bqf_context* ctx, const char* a, const char* b, char** out_json);

/* TSV class-number table for family "q3", "sqrt2" or "hsu". Rows that fail
 * are described line by line in *out_diagnostics (may be empty). */
BQF_API bqf_status bqf_table(bqf_context* ctx, const char* family, const char* q, uint64_t k_max, uint64_t r_max,
                             char** out_tsv, char** out_diagnostics);

/* Q(sqrt q, sqrt kr); q = 2 selects Q(sqrt 2, sqrt kr). */
BQF_API bqf_status bqf_field_new(bqf_context* ctx, const char* q, const char* k, const char* r, bqf_field** out);
BQF_API void bqf_field_free(bqf_field* field);
BQF_API bqf_status bqf_field_name(bqf_context* ctx, const bqf_field* field, char** out);
BQF_API bqf_status bqf_field_family(bqf_context* ctx, const bqf_field* field, char** out);
BQF_API bqf_status bqf_field_conductor(bqf_context* ctx, const bqf_field* field, char** out);
BQF_API bqf_status bqf_field_class_number(bqf_context* ctx, const bqf_field* field, char** out);

BQF_API bqf_status bqf_certificate_build(bqf_context* ctx, const bqf_field* field, bqf_certificate** out);
BQF_API bqf_status bqf_certificate_parse(bqf_context* ctx, const char* json, bqf_certificate** out);
BQF_API void bqf_certificate_free(bqf_certificate* cert);
BQF_API bqf_status bqf_certificate_to_json(bqf_context* ctx, const bqf_certificate* cert, char** out_json);
/* *out_valid is 1 or 0; the report lists every recomputed condition. */
BQF_API bqf_status bqf_certificate_verify(bqf_context* ctx, const bqf_certificate* cert, int* out_valid,
                                          char** out_report_json);

/* which: "K" (complete splitting in the field), "H" (in its Hilbert class
 * field) or "pattern", in which case pattern holds one '+' or '-' per
 * radicand (q, k, r) or (2, p, q). */
BQF_API bqf_status bqf_density(bqf_context* ctx, const bqf_field* field, const char* which, const char* pattern,
                               uint64_t bound, char** out_json);
/* Primes up to bound splitting in the field but not in its Hilbert class
 * field, one per line. */
BQF_API bqf_status bqf_pool(bqf_context* ctx, const bqf_field* field, uint64_t bound, char** out_text);
BQF_API bqf_status bqf_growth(bqf_context* ctx, const bqf_field* field, const bqf_certificate* cert,
                              const uint64_t* bounds, size_t count, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
