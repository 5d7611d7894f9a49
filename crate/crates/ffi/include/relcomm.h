#ifndef RELCOMM_H
#define RELCOMM_H

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum relcomm_status {
  RELCOMM_STATUS_OK = 0,
  RELCOMM_STATUS_NULL_POINTER = 1,
  RELCOMM_STATUS_INVALID_UTF8 = 2,
  RELCOMM_STATUS_INVALID_INPUT = 3,
  RELCOMM_STATUS_CAP_EXCEEDED = 4,
  RELCOMM_STATUS_OUT_OF_RANGE = 5,
  RELCOMM_STATUS_PANIC = 6,
} relcomm_status;

/**
 * Opaque finite group.
 */
typedef struct relcomm_group_t relcomm_group_t;

/**
 * Opaque degree spectrum.
 */
typedef struct relcomm_spectrum_t relcomm_spectrum_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null.
 */
const char *relcomm_last_error_message(void);

/**
 * Builds a group from a JSON group spec.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum relcomm_status relcomm_group_from_json(const char *json, struct relcomm_group_t **out);

/**
 * Builds a group from a row-major `n × n` multiplication table.
 *
 * # Safety
 * `table` must point at `n * n` readable entries and `out` be valid.
 */
enum relcomm_status relcomm_group_from_table(const size_t *table,
                                             size_t n,
                                             struct relcomm_group_t **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void relcomm_group_free(struct relcomm_group_t *g);

/**
 * # Safety
 * `g` must be a live group handle, `out` a valid pointer.
 */
enum relcomm_status relcomm_group_order(const struct relcomm_group_t *g, size_t *out);

/**
 * `d(G)` as a `"num/den"` string.
 *
 * # Safety
 * `g` must be a live group handle, `out` a valid pointer.
 */
enum relcomm_status relcomm_comm_degree(const struct relcomm_group_t *g, char **out);

/**
 * Degree spectrum, building the subgroup lattice under `cap`.
 *
 * # Safety
 * `g` must be a live group handle, `out` a valid pointer.
 */
enum relcomm_status relcomm_spectrum(const struct relcomm_group_t *g,
                                     size_t cap,
                                     struct relcomm_spectrum_t **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void relcomm_spectrum_free(struct relcomm_spectrum_t *s);

/**
 * Number of distinct values; 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live spectrum handle.
 */
size_t relcomm_spectrum_len(const struct relcomm_spectrum_t *s);

/**
 * Value `index` (0 is `1/1`, decreasing) as a `"num/den"` string.
 *
 * # Safety
 * `s` must be a live spectrum handle, `out` a valid pointer.
 */
enum relcomm_status relcomm_spectrum_value(const struct relcomm_spectrum_t *s,
                                           size_t index,
                                           char **out);

/**
 * Classification report as a JSON object with `caseTag`, `predicted`,
 * `spectrum` and `verdict`.
 *
 * # Safety
 * `g` must be a live group handle, `out` a valid pointer.
 */
enum relcomm_status relcomm_classify_json(const struct relcomm_group_t *g, size_t cap, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void relcomm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELCOMM_H */
