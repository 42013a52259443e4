#ifndef SCROLL_ULRICH_H
#define SCROLL_ULRICH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SuStatus {
  SU_STATUS_OK = 0,
  SU_STATUS_NULL_POINTER = 1,
  SU_STATUS_INVALID_PARAMS = 2,
  SU_STATUS_INVALID_ARGUMENT = 3,
  SU_STATUS_UNAVAILABLE = 4,
  SU_STATUS_OVERFLOW = 5,
  SU_STATUS_INTERNAL = 6,
} SuStatus;

/**
 * Ulrich verdict codes written by [`su_is_ulrich_line`].
 */
typedef enum SuUlrich {
  SU_ULRICH_NOT_ULRICH = 0,
  SU_ULRICH_ULRICH = 1,
  SU_ULRICH_UNDECIDED = 2,
} SuUlrich;

/**
 * Opaque scroll parameters.
 */
typedef struct SuParams SuParams;

/**
 * Opaque extension tower.
 */
typedef struct SuTower SuTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *su_status_message(enum SuStatus status);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SuStatus su_params_new(int64_t e, int64_t b, int64_t k, struct SuParams **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SuStatus su_params_sporadic(int64_t t, struct SuParams **out);

/**
 * # Safety
 * `p` must be null or a handle from `su_params_new`/`su_params_sporadic` not yet freed.
 */
void su_params_free(struct SuParams *p);

/**
 * Cohomology of `x xi + (alpha, beta)`. Writes lower and upper bounds for
 * `h^0..h^3` into `lo[4]`, `hi[4]` and the Euler characteristic into `chi`.
 *
 * # Safety
 * `p` must be a live handle; `lo` and `hi` must point to four writable `int64_t`.
 */
enum SuStatus su_coh_scroll_line(const struct SuParams *p,
                                 int64_t x,
                                 int64_t alpha,
                                 int64_t beta,
                                 int64_t *lo,
                                 int64_t *hi,
                                 int64_t *chi);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SuStatus su_chi_line(const struct SuParams *p,
                          int64_t x,
                          int64_t alpha,
                          int64_t beta,
                          int64_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SuStatus su_is_ulrich_line(const struct SuParams *p,
                                int64_t x,
                                int64_t alpha,
                                int64_t beta,
                                enum SuUlrich *out);

/**
 * Tower from a comma- or space-separated constituent list such as `"M1,M2,L2"`.
 *
 * # Safety
 * `p` must be a live handle, `spec` a NUL-terminated string, `out` writable.
 */
enum SuStatus su_tower_new(const struct SuParams *p, const char *spec, struct SuTower **out);

/**
 * # Safety
 * `t` must be null or a handle from `su_tower_new` not yet freed.
 */
void su_tower_free(struct SuTower *t);

/**
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum SuStatus su_tower_rank(const struct SuTower *t, int64_t *out);

/**
 * `1 - chi(G (x) G^dual)`.
 *
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
enum SuStatus su_tower_moduli_dim(const struct SuTower *t, int64_t *out);

/**
 * JSON report of the built-in claim registry over `t_min..=t_max`,
 * `r_min..=r_max`. Release the string with [`su_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum SuStatus su_report_json(int64_t t_min,
                             int64_t t_max,
                             int64_t r_min,
                             int64_t r_max,
                             char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void su_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCROLL_ULRICH_H */
