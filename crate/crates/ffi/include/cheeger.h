#ifndef CHEEGER_H
#define CHEEGER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every call.
 */
typedef enum {
  CHEEGER_CODE_OK = 0,
  CHEEGER_CODE_NULL_ARGUMENT = 1,
  CHEEGER_CODE_BAD_UTF8 = 2,
  CHEEGER_CODE_BAD_JSON = 3,
  CHEEGER_CODE_INVALID_REGION = 4,
  CHEEGER_CODE_BAD_PARAMETER = 5,
  CHEEGER_CODE_CONSTRUCTION_FAILED = 6,
  CHEEGER_CODE_NUMERICAL_DEGENERACY = 7,
  CHEEGER_CODE_PANIC = 8,
} CheegerCode;

/**
 * Self-Cheeger status.
 */
typedef enum {
  CHEEGER_VERDICT_STATUS_NOT_DETERMINED = 0,
  CHEEGER_VERDICT_STATUS_SELF_CHEEGER = 1,
  CHEEGER_VERDICT_STATUS_MINIMAL_CHEEGER = 2,
} CheegerVerdictStatus;

typedef enum {
  CHEEGER_ROUTE_NONE = 0,
  CHEEGER_ROUTE_STRICT = 1,
  CHEEGER_ROUTE_INTERIOR_CLOSURE = 2,
} CheegerRoute;

/**
 * Opaque validated region.
 */
typedef struct CheegerRegion CheegerRegion;

/**
 * Plain-data summary of a self-Cheeger verdict. `h` is NaN when undetermined.
 */
typedef struct {
  CheegerVerdictStatus status;
  CheegerRoute route;
  double r;
  double h;
  bool convex;
  bool no_necks;
  size_t components;
} CheegerVerdictC;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next call.
 */
const char *cheeger_last_error(void);

/**
 * Parses a shape JSON document into a region.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
CheegerCode cheeger_region_from_json(const char *json, CheegerRegion **out);

/**
 * Builds a catalog shape; `params` may be null when `n_params` is zero.
 *
 * # Safety
 * `name` must be NUL-terminated, `params` must point to `n_params` doubles, `out` must be valid.
 */
CheegerCode cheeger_region_fixture(const char *name,
                                   const double *params,
                                   size_t n_params,
                                   CheegerRegion **out);

/**
 * Releases a region; null is ignored.
 *
 * # Safety
 * `region` must come from this library and not be used afterwards.
 */
void cheeger_region_free(CheegerRegion *region);

/**
 * # Safety
 * `region` must be a live handle and the output pointers valid.
 */
CheegerCode cheeger_region_measures(const CheegerRegion *region, double *area, double *perimeter);

/**
 * Shape JSON of a region; free the string with `cheeger_string_free`.
 *
 * # Safety
 * `region` must be a live handle and `out` valid.
 */
CheegerCode cheeger_region_to_json(const CheegerRegion *region, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void cheeger_string_free(char *s);

/**
 * Runs the rolling-disk test at `R = |Ω|/P(Ω)`.
 *
 * # Safety
 * `region` must be a live handle and `out` valid.
 */
CheegerCode cheeger_check_self_cheeger(const CheegerRegion *region, CheegerVerdictC *out);

/**
 * Grid bracket `[h_lo, h_hi]` for the Cheeger constant.
 *
 * # Safety
 * `region` must be a live handle and the output pointers valid.
 */
CheegerCode cheeger_oracle_estimate(const CheegerRegion *region,
                                    size_t resolution,
                                    double *h_lo,
                                    double *h_hi);

/**
 * Builds the self-Cheeger set `ω ⊕ B_R` from a shape or region-set JSON for `ω`.
 *
 * # Safety
 * `omega_json` must be NUL-terminated; `out` and `radius` must be valid.
 */
CheegerCode cheeger_construct(const char *omega_json, CheegerRegion **out, double *radius);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEEGER_H */
