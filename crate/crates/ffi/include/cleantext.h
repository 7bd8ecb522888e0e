#ifndef CLEANTEXT_H
#define CLEANTEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CtStatus {
  CT_STATUS_OK = 0,
  CT_STATUS_NULL_POINTER = 1,
  CT_STATUS_INVALID_UTF8 = 2,
  CT_STATUS_IO = 3,
  CT_STATUS_PARSE = 4,
  CT_STATUS_CONFIG = 5,
  CT_STATUS_NO_PHONETIC_CONTENT = 6,
  CT_STATUS_PANIC = 7,
} CtStatus;

/**
 * Opaque cleaner handle.
 */
typedef struct CtCleaner CtCleaner;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a cleaner from a TOML configuration file and stores it in `*out`.
 *
 * # Safety
 * `config_path` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum CtStatus ct_cleaner_new(const char *config_path, struct CtCleaner **out);

/**
 * Cleans plain `text`. The cleaned text goes to `*out_text`; when
 * `out_report` is not null a JSON report goes to `*out_report`.
 *
 * # Safety
 * `cleaner` must come from [`ct_cleaner_new`]; `text` must be a valid
 * NUL-terminated string; `out_text` must be valid; `out_report` may be
 * null.
 */
enum CtStatus ct_cleaner_clean(const struct CtCleaner *cleaner,
                               const char *text,
                               char **out_text,
                               char **out_report);

/**
 * # Safety
 * `cleaner` must be null or come from [`ct_cleaner_new`], and must not be
 * used afterwards.
 */
void ct_cleaner_free(struct CtCleaner *cleaner);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ct_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *ct_last_error(void);

/**
 * Damerau-Levenshtein distance between `a` and `b`, counted in
 * characters.
 *
 * # Safety
 * `a` and `b` must be valid NUL-terminated strings; `out` a valid pointer.
 */
enum CtStatus ct_edit_distance(const char *a, const char *b, size_t *out);

/**
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum CtStatus ct_soundex_key(const char *word, char **out);

/**
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum CtStatus ct_phonetic_key(const char *word, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLEANTEXT_H */
