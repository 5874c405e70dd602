/*
 * lzkkp C API.
 *
 * Linear time LZ77 factorization from a suffix array, exposed through
 * opaque handles. Every function returns an lzkkp_status; on failure a
 * thread-local message is available from lzkkp_last_error(). Handles are
 * not thread-safe, but distinct handles may be used from different threads.
 *
 * Positions are 1-based throughout.
 */
#ifndef LZKKP_H
#define LZKKP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LZKKP_BUILDING_LIBRARY)
#    define LZKKP_API __declspec(dllexport)
#  else
#    define LZKKP_API __declspec(dllimport)
#  endif
#else
#  define LZKKP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lzkkp_status {
    LZKKP_OK = 0,
    LZKKP_E_ARGUMENT = 1,   /* bad argument or null handle */
    LZKKP_E_IO = 2,         /* file could not be opened, read or written */
    LZKKP_E_FORMAT = 3,     /* file or stream does not match its layout */
    LZKKP_E_MALFORMED = 4,  /* factorization does not decode */
    LZKKP_E_VALIDATION = 5, /* suffix array is not valid for the text */
    LZKKP_E_STATE = 6,      /* handle was consumed by a destructive call */
    LZKKP_E_NOMEM = 7,
    LZKKP_E_INTERNAL = 8
} lzkkp_status;

typedef enum lzkkp_algorithm {
    LZKKP_KKP3 = 0,  /* SA + interleaved PSV/NSV; overwrites SA */
    LZKKP_KKP3S = 1, /* as KKP3 without an explicit stack; SA intact */
    LZKKP_KKP2S = 2, /* SA + Phi; overwrites SA */
    LZKKP_KKP2N = 3, /* SA + Phi^-1, no explicit stack; SA intact */
    LZKKP_KKP2B = 4  /* KKP2N with a fixed-size stack buffer */
} lzkkp_algorithm;

typedef enum lzkkp_format {
    LZKKP_FORMAT_TEXT = 0,
    LZKKP_FORMAT_BINARY = 1
} lzkkp_format;

/* lzkkp_factorize flag: let a destructive algorithm (KKP3, KKP2S) work in
 * the SA handle's own storage. The handle is then spent and every later use
 * returns LZKKP_E_STATE. Without the flag those algorithms run on a copy. */
#define LZKKP_CONSUME_SA 1u

#define LZKKP_DEFAULT_BUFFER_ENTRIES 65536u

typedef struct lzkkp_text lzkkp_text;
typedef struct lzkkp_sa lzkkp_sa;
typedef struct lzkkp_factorization lzkkp_factorization;

typedef struct lzkkp_factor {
    int is_literal;   /* 1 for a literal byte, 0 for a copy */
    uint8_t symbol;   /* literal byte */
    uint64_t pos;     /* copy source, 0 for literals */
    uint64_t len;     /* copy length, 0 for literals */
} lzkkp_factor;

typedef struct lzkkp_counters {
    uint64_t comparisons;     /* byte comparisons while measuring phrases */
    uint64_t max_stack_depth;
    uint64_t sa_reads;
} lzkkp_counters;

LZKKP_API const char* lzkkp_version(void);
LZKKP_API const char* lzkkp_last_error(void);
LZKKP_API const char* lzkkp_status_string(lzkkp_status status);

LZKKP_API const char* lzkkp_algorithm_name(lzkkp_algorithm algorithm);
LZKKP_API lzkkp_status lzkkp_algorithm_from_name(const char* name, lzkkp_algorithm* out);

/* Texts */
LZKKP_API lzkkp_status lzkkp_text_from_memory(const uint8_t* data, size_t len, lzkkp_text** out);
LZKKP_API lzkkp_status lzkkp_text_from_file(const char* path, lzkkp_text** out);
LZKKP_API size_t lzkkp_text_length(const lzkkp_text* text);
LZKKP_API const uint8_t* lzkkp_text_data(const lzkkp_text* text);
LZKKP_API size_t lzkkp_text_alphabet_size(const lzkkp_text* text);
LZKKP_API void lzkkp_text_free(lzkkp_text* text);

/* Suffix arrays */
LZKKP_API lzkkp_status lzkkp_sa_build(const lzkkp_text* text, lzkkp_sa** out);
LZKKP_API lzkkp_status lzkkp_sa_load(const char* path, lzkkp_sa** out);
LZKKP_API lzkkp_status lzkkp_sa_save(const lzkkp_sa* sa, const char* path);
LZKKP_API lzkkp_status lzkkp_sa_clone(const lzkkp_sa* sa, lzkkp_sa** out);
LZKKP_API lzkkp_status lzkkp_sa_length(const lzkkp_sa* sa, uint64_t* out);
/* Entry width in bytes, 4 or 8. */
LZKKP_API lzkkp_status lzkkp_sa_width(const lzkkp_sa* sa, unsigned* out);
/* SA[k] for k in [1..n]. */
LZKKP_API lzkkp_status lzkkp_sa_get(const lzkkp_sa* sa, uint64_t k, uint64_t* out);
/* LZKKP_OK if valid; LZKKP_E_VALIDATION with a diagnostic copied into
 * `diagnostic` (may be null, truncated to `capacity`) otherwise. */
LZKKP_API lzkkp_status lzkkp_sa_validate(const lzkkp_text* text, const lzkkp_sa* sa,
                                         char* diagnostic, size_t capacity);
LZKKP_API void lzkkp_sa_free(lzkkp_sa* sa);

/* Factorization. `buffer_entries` is used by KKP2B only; 0
 * selects LZKKP_DEFAULT_BUFFER_ENTRIES. `counters` may be
 * null. */
LZKKP_API lzkkp_status lzkkp_factorize(const lzkkp_text* text, lzkkp_sa* sa,
                                       lzkkp_algorithm algorithm, size_t buffer_entries,
                                       unsigned flags, lzkkp_factorization** out,
                                       lzkkp_counters* counters);
/* Streams SA[1..n] from a suffix array file in one pass. Only KKP3S, KKP2N
 * and KKP2B can stream. */
LZKKP_API lzkkp_status lzkkp_factorize_stream(const lzkkp_text* text, const char* sa_path,
                                              lzkkp_algorithm algorithm, size_t buffer_entries,
                                              lzkkp_factorization** out,
                                              lzkkp_counters* counters);

LZKKP_API size_t lzkkp_fact_count(const lzkkp_factorization* f);
LZKKP_API uint64_t lzkkp_fact_source_length(const lzkkp_factorization* f);
LZKKP_API lzkkp_status lzkkp_fact_get(const lzkkp_factorization* f, size_t k, lzkkp_factor* out);
/* n / z; written as NaN when n == 0. */
LZKKP_API lzkkp_status lzkkp_fact_stats(const lzkkp_factorization* f, uint64_t* z,
                                        double* n_over_z);
LZKKP_API lzkkp_status lzkkp_fact_decode(const lzkkp_factorization* f, lzkkp_text** out);
/* *equal is 1 iff the factorization decodes to exactly `text`. */
LZKKP_API lzkkp_status lzkkp_fact_verify(const lzkkp_factorization* f, const lzkkp_text* text,
                                         int* equal);
LZKKP_API lzkkp_status lzkkp_fact_save(const lzkkp_factorization* f, const char* path,
                                       lzkkp_format format);
/* Writes the text format to a caller-supplied FILE-like sink. */
typedef void (*lzkkp_write_fn)(const char* data, size_t len, void* user);
LZKKP_API lzkkp_status lzkkp_fact_write_text(const lzkkp_factorization* f, lzkkp_write_fn write,
                                             void* user);
LZKKP_API lzkkp_status lzkkp_fact_load(const char* path, lzkkp_factorization** out);
LZKKP_API void lzkkp_fact_free(lzkkp_factorization* f);

#ifdef __cplusplus
}
#endif

#endif /* LZKKP_H */
