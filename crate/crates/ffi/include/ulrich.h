#ifndef ULRICH_H
#define ULRICH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by every fallible entry point.
 */
typedef enum UlrichCode {
  ULRICH_CODE_OK = 0,
  ULRICH_CODE_NULL_POINTER = 1,
  ULRICH_CODE_INVALID_UTF8 = 2,
  ULRICH_CODE_PARSE = 3,
  ULRICH_CODE_RANGE = 4,
  ULRICH_CODE_DIMENSION_MISMATCH = 5,
  ULRICH_CODE_PARITY = 6,
  ULRICH_CODE_PRECONDITION = 7,
  ULRICH_CODE_UNSUPPORTED = 8,
  ULRICH_CODE_CONSISTENCY = 9,
  /*
   A Rust panic (for example integer overflow) was caught at the boundary.
   */
  ULRICH_CODE_PANIC = 10,
} UlrichCode;

typedef enum UlrichVerdictKind {
  ULRICH_VERDICT_KIND_NOT_ULRICH = 0,
  ULRICH_VERDICT_KIND_ULRICH = 1,
  /*
   Blow-ups: the numerical filter passed but cohomology is not computed.
   */
  ULRICH_VERDICT_KIND_FILTER_PASSED = 2,
  ULRICH_VERDICT_KIND_FILTER_FAILED = 3,
} UlrichVerdictKind;

/*
 Values accepted by the `kind` argument of [`ulrich_report_json`].
 */
typedef enum UlrichReportKind {
  ULRICH_REPORT_KIND_INVARIANTS = 0,
  ULRICH_REPORT_KIND_LEDGER = 1,
  ULRICH_REPORT_KIND_CHOW = 2,
  ULRICH_REPORT_KIND_CYCLES = 3,
  ULRICH_REPORT_KIND_LM = 4,
  ULRICH_REPORT_KIND_ENUMERATE = 5,
} UlrichReportKind;

/*
 Opaque surface handle.
 */
typedef struct UlrichSurface UlrichSurface;

typedef struct UlrichCohomology {
  int64_t h0;
  int64_t h1;
  int64_t h2;
} UlrichCohomology;

typedef struct UlrichVerdict {
  enum UlrichVerdictKind kind;
  /*
   True when `witnesses` holds h0(L-H), h1(L-H), h1(L-2H), h2(L-2H).
   */
  bool exact;
  int64_t witnesses[4];
  bool c1_condition;
  int64_t chi_minus_h;
  int64_t chi_minus_2h;
} UlrichVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next failing call on the same thread.
 */
const char *ulrich_last_error_message(void);

/*
 Parses a descriptor (`P2`, `F<a>` or `dP<r>`) into a new handle.

 # Safety
 `descriptor` must be a NUL-terminated string and `out` a writable pointer.
 */
enum UlrichCode ulrich_surface_new(const char *descriptor, struct UlrichSurface **out);

/*
 # Safety
 `surface` must come from [`ulrich_surface_new`] and not be freed twice.
 NULL is ignored.
 */
void ulrich_surface_free(struct UlrichSurface *surface);

/*
 Picard rank, or 0 for a NULL handle.

 # Safety
 `surface` must be NULL or a live handle.
 */
size_t ulrich_surface_picard_rank(const struct UlrichSurface *surface);

/*
 # Safety
 `surface` must be a live handle and `out` writable.
 */
enum UlrichCode ulrich_surface_canonical_square(const struct UlrichSurface *surface, int64_t *out);

/*
 Writes the canonical class into `out[0..len]`.

 # Safety
 `out` must have room for `len` values.
 */
enum UlrichCode ulrich_canonical(const struct UlrichSurface *surface, int64_t *out, size_t len);

/*
 # Safety
 `a` and `b` must point to `len` readable values; `out` must be writable.
 */
enum UlrichCode ulrich_intersect(const struct UlrichSurface *surface,
                                 const int64_t *a,
                                 const int64_t *b,
                                 size_t len,
                                 int64_t *out);

/*
 Arithmetic genus `1 + C·(C+K)/2`.

 # Safety
 As for [`ulrich_intersect`].
 */
enum UlrichCode ulrich_genus(const struct UlrichSurface *surface,
                             const int64_t *curve,
                             size_t len,
                             int64_t *out);

/*
 # Safety
 As for [`ulrich_intersect`].
 */
enum UlrichCode ulrich_chi_line(const struct UlrichSurface *surface,
                                const int64_t *line,
                                size_t len,
                                int64_t *out);

/*
 Euler characteristic of rank-2 data `(c1, c2)`.

 # Safety
 As for [`ulrich_intersect`].
 */
enum UlrichCode ulrich_chi_rank2(const struct UlrichSurface *surface,
                                 const int64_t *c1,
                                 size_t len,
                                 int64_t c2,
                                 int64_t *out);

/*
 Exact `(h0, h1, h2)` of a line bundle; `Unsupported` on blow-ups.

 # Safety
 As for [`ulrich_intersect`].
 */
enum UlrichCode ulrich_cohomology(const struct UlrichSurface *surface,
                                  const int64_t *line,
                                  size_t len,
                                  struct UlrichCohomology *out);

/*
 Ulrich test for `O(L)` with polarization `H`.

 # Safety
 `h` and `line` must point to `len` readable values; `out` must be writable.
 */
enum UlrichCode ulrich_is_ulrich_line(const struct UlrichSurface *surface,
                                      const int64_t *h,
                                      const int64_t *line,
                                      size_t len,
                                      struct UlrichVerdict *out);

/*
 Serializes a report for `(surface, H)` as JSON into a new string that
 must be released with [`ulrich_string_free`]. `kind` is an
 [`UlrichReportKind`] value; anything else yields `Precondition`.

 # Safety
 `h` must point to `len` readable values; `out` must be writable.
 */
enum UlrichCode ulrich_report_json(const struct UlrichSurface *surface,
                                   const int64_t *h,
                                   size_t len,
                                   int32_t kind,
                                   char **out);

/*
 # Safety
 `s` must come from this library and not be freed twice. NULL is ignored.
 */
void ulrich_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ULRICH_H */
