#ifndef PERICAT_H
#define PERICAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum PericatStatus {
  PERICAT_STATUS_OK = 0,
  PERICAT_STATUS_NULL_POINTER = 1,
  PERICAT_STATUS_INVALID_UTF8 = 2,
  // Malformed input: bad number, length mismatch, bad JSON.
  PERICAT_STATUS_PARSE = 3,
  PERICAT_STATUS_NOT_WEAKLY_TYPICAL = 4,
  PERICAT_STATUS_NO_TABLE_ENTRY = 5,
  PERICAT_STATUS_NON_TERMINATING = 6,
  // Any other well-formed query the engine rejects.
  PERICAT_STATUS_DOMAIN = 7,
  PERICAT_STATUS_PANIC = 8,
} PericatStatus;

// Opaque formal character.
typedef struct PericatChar PericatChar;

// Opaque ρ-shifted weight.
typedef struct PericatWeight PericatWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. Valid until the
// next call into the library from this thread; do not free.
const char *pericat_last_error(void);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pericat_string_free(char *s);

// Parse a comma-separated weight such as `"-1,1/2,5"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PericatStatus pericat_weight_parse(const char *text, struct PericatWeight **out);

// # Safety
// `w` must come from [`pericat_weight_parse`] and not have been freed.
void pericat_weight_free(struct PericatWeight *w);

// # Safety
// `w` must be a live handle; `out` must be writable.
enum PericatStatus pericat_weight_to_string(const struct PericatWeight *w, char **out);

// # Safety
// `w` must be a live handle; `out` must be writable.
enum PericatStatus pericat_weight_rank(const struct PericatWeight *w, size_t *out);

// Block label as JSON, e.g. `[{"key":"0","size":3,"odd":1}]`.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum PericatStatus pericat_block_label_json(const struct PericatWeight *w, char **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum PericatStatus pericat_same_block(const struct PericatWeight *a,
                                      const struct PericatWeight *b,
                                      bool *out);

// Number of blocks for the class sizes `sizes[0..len]`.
//
// # Safety
// `sizes` must point to `len` readable values; `out` must be writable.
enum PericatStatus pericat_block_count(const size_t *sizes, size_t len, uint64_t *out);

// Parse a character from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PericatStatus pericat_char_from_json(const char *json, struct PericatChar **out);

// # Safety
// `c` must come from this library and not have been freed.
void pericat_char_free(struct PericatChar *c);

// JSON form of a character. The zero character is written in the ∇-basis.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum PericatStatus pericat_char_to_json(const struct PericatChar *c, char **out);

// Apply `θ_a`, with `a` a rational such as `"-1"` or `"3/2"`.
//
// # Safety
// `a` must be a NUL-terminated string, `c` a live handle, `out` writable.
enum PericatStatus pericat_theta(const char *a,
                                 const struct PericatChar *c,
                                 struct PericatChar **out);

// `T^p_λ` in the ∇-basis. `parabolic` is a composition such as `"2,1"`,
// or NULL for the Borel.
//
// # Safety
// `w` must be a live handle, `parabolic` NULL or NUL-terminated, `out`
// writable.
enum PericatStatus pericat_tilting(const struct PericatWeight *w,
                                   const char *parabolic,
                                   struct PericatChar **out);

// Coefficients of `P_{x,w}` as a JSON array, lowest degree first.
// Permutations are one-line, e.g. `"3412"` or `"2,1,3"`.
//
// # Safety
// `x`, `w` must be NUL-terminated strings; `out` must be writable.
enum PericatStatus pericat_kl_poly(const char *x, const char *w, char **out);

// `[M(μ) : L(λ)]` for `gl(n)`, parabolic if `parabolic` is non-NULL.
//
// # Safety
// `verma`, `simple` must be live handles, `parabolic` NULL or
// NUL-terminated, `out` writable.
enum PericatStatus pericat_verma_mult(const struct PericatWeight *verma,
                                      const struct PericatWeight *simple,
                                      const char *parabolic,
                                      int64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PERICAT_H */
