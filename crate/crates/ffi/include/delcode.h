#ifndef DELCODE_H
#define DELCODE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  DELCODE_STATUS_OK = 0,
  /**
   * Malformed or out-of-range argument.
   */
  DELCODE_STATUS_INPUT = 1,
  /**
   * Refused by an enumeration or size guard.
   */
  DELCODE_STATUS_RESOURCE = 2,
  /**
   * A required pointer was null.
   */
  DELCODE_STATUS_NULL_POINTER = 3,
  /**
   * Unexpected failure inside the library.
   */
  DELCODE_STATUS_INTERNAL = 4,
} DelcodeStatus;

/**
 * A deletion code.
 */
typedef struct DelcodeCode DelcodeCode;

/**
 * A sorted set of optimal LCS, SCS or MCS strings.
 */
typedef struct DelcodeSet DelcodeSet;

/**
 * A binary word.
 */
typedef struct DelcodeWord DelcodeWord;

/**
 * Summary of the k-deletion graph on words of length n.
 */
typedef struct {
  uint64_t vertices;
  uint64_t edges;
  uint64_t max_degree;
  uint64_t triangles;
  double bollobas_bound;
} DelcodeGraphStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *delcode_last_error(void);

/**
 * Parses a NUL-terminated 0/1 string.
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
DelcodeStatus delcode_word_parse(const char *text, DelcodeWord **out);

/**
 * # Safety
 * `w` must come from this library, or be null.
 */
void delcode_word_free(DelcodeWord *w);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_word_len(const DelcodeWord *w, size_t *out);

/**
 * Writes a newly allocated C string; release it with [`delcode_string_free`].
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_word_to_string(const DelcodeWord *w, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void delcode_string_free(char *s);

/**
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_lcs_len(const DelcodeWord *u, const DelcodeWord *v, size_t *out);

/**
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_scs_len(const DelcodeWord *u, const DelcodeWord *v, size_t *out);

/**
 * Deletion distance of two words of equal length.
 *
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_deletion_distance(const DelcodeWord *u, const DelcodeWord *v, size_t *out);

/**
 * Number of distinct SCS strings, saturating at `UINT64_MAX`.
 *
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_scs_count(const DelcodeWord *u, const DelcodeWord *v, uint64_t *out);

/**
 * All distinct LCS strings.
 *
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_lcs_set(const DelcodeWord *u, const DelcodeWord *v, DelcodeSet **out);

/**
 * All distinct SCS strings.
 *
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_scs_set(const DelcodeWord *u, const DelcodeWord *v, DelcodeSet **out);

/**
 * All minimal common supersequences.
 *
 * # Safety
 * `u`, `v` must be live handles; `out` must be writable.
 */
DelcodeStatus delcode_mcs_set(const DelcodeWord *u, const DelcodeWord *v, DelcodeSet **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_set_len(const DelcodeSet *s, size_t *out);

/**
 * Copies the `index`-th string (lexicographic order) into a new word.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_set_get(const DelcodeSet *s, size_t index, DelcodeWord **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void delcode_set_free(DelcodeSet *s);

/**
 * Varshamov-Tenengolts code of length `n` and residue `residue`.
 *
 * # Safety
 * `out` must be writable.
 */
DelcodeStatus delcode_vt_code(size_t n, size_t residue, DelcodeCode **out);

/**
 * Greedy code in lexicographic scan order.
 *
 * # Safety
 * `out` must be writable.
 */
DelcodeStatus delcode_greedy_code(size_t n, size_t k, DelcodeCode **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_code_len(const DelcodeCode *c, size_t *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_code_get(const DelcodeCode *c, size_t index, DelcodeWord **out);

/**
 * Whether all codewords are pairwise at deletion distance above `k`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
DelcodeStatus delcode_code_is_valid(const DelcodeCode *c, bool *out);

/**
 * # Safety
 * `c` must come from this library, or be null.
 */
void delcode_code_free(DelcodeCode *c);

/**
 * Exact statistics of the k-deletion graph on `{0,1}^n`.
 *
 * # Safety
 * `out` must be writable.
 */
DelcodeStatus delcode_graph_stats(size_t n, size_t k, DelcodeGraphStats *out);

/**
 * Independence lower bound from vertex count, maximum degree and triangle
 * count; zero triangles are evaluated as one.
 */
double delcode_bollobas_bound(uint64_t vertices, uint64_t max_degree, uint64_t triangles);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELCODE_H */
