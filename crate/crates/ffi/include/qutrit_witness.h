#ifndef QUTRIT_WITNESS_H
#define QUTRIT_WITNESS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define QW_FAILED_A_RANGE 1

#define QW_FAILED_SUM 2

#define QW_FAILED_PRODUCT 4

typedef enum QwStatus {
  QW_STATUS_OK = 0,
  QW_STATUS_NULL_POINTER = 1,
  QW_STATUS_INVALID_PARAMS = 2,
  QW_STATUS_OFF_ELLIPSE = 3,
  QW_STATUS_DEGENERATE = 4,
  QW_STATUS_NUMERIC_ERROR = 5,
  QW_STATUS_INDEX_OUT_OF_RANGE = 6,
  QW_STATUS_PANIC = 7,
} QwStatus;

/**
 * Result of a spanning check.
 */
typedef struct QwSpanReport QwSpanReport;

/**
 * Witness `W[a,b,c]` together with its 9×9 matrix.
 */
typedef struct QwWitness QwWitness;

typedef struct QwClassification {
  bool is_witness;
  /**
   * 1 indecomposable, 0 decomposable, -1 not a witness.
   */
  int32_t indecomposable;
  bool on_ellipse;
  bool is_psd;
  /**
   * Bit 0: `0 <= a < 2`, bit 1: `a + b + c >= 2`, bit 2: `bc >= (1-a)^2`.
   */
  uint32_t failed_mask;
} QwClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *qw_status_message(enum QwStatus status);

/**
 * Creates `W[a,b,c]`. On success `*out` receives a handle owned by the caller.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum QwStatus qw_witness_new(double a, double b, double c, struct QwWitness **out);

/**
 * # Safety
 * `w` must be null or a handle from `qw_witness_new` not yet freed.
 */
void qw_witness_free(struct QwWitness *w);

/**
 * Copies the matrix row-major into two arrays of 81 doubles.
 *
 * # Safety
 * `w` must be a live handle; `re` and `im` must be valid for 81 writes.
 */
enum QwStatus qw_witness_matrix(const struct QwWitness *w, double *re, double *im);

/**
 * # Safety
 * `w` must be a live handle and `out` valid for writes.
 */
enum QwStatus qw_witness_classify(const struct QwWitness *w,
                                  double tol,
                                  struct QwClassification *out);

/**
 * `⟨x⊗y|W|x⊗y⟩` for vectors given as separate real and imaginary parts.
 *
 * # Safety
 * `w` must be a live handle, the four vector pointers valid for 3 reads and
 * `out` valid for a write.
 */
enum QwStatus qw_witness_expectation(const struct QwWitness *w,
                                     const double *x_re,
                                     const double *x_im,
                                     const double *y_re,
                                     const double *y_im,
                                     double *out);

/**
 * Smallest expectation over unit product vectors found by see-saw search.
 *
 * # Safety
 * `w` must be a live handle and `out` valid for a write.
 */
enum QwStatus qw_witness_min_product(const struct QwWitness *w,
                                     uintptr_t n_starts,
                                     uint64_t seed,
                                     double *out);

/**
 * Spanning check for the ellipse point `(b, c)`, snapped onto the ellipse when
 * its residual is at most `ellipse_tol`. `fallback_starts = 0` disables the
 * numeric search used where no closed form exists.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum QwStatus qw_span_new(double b,
                          double c,
                          double phi1,
                          double phi2,
                          double ellipse_tol,
                          uintptr_t fallback_starts,
                          uint64_t seed,
                          struct QwSpanReport **out);

/**
 * # Safety
 * `r` must be null or a handle from `qw_span_new` not yet freed.
 */
void qw_span_free(struct QwSpanReport *r);

/**
 * Rank of the zero-vector span, or 0 for a null handle.
 *
 * # Safety
 * `r` must be null or a live handle.
 */
uintptr_t qw_span_rank(const struct QwSpanReport *r);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
bool qw_span_is_numeric(const struct QwSpanReport *r);

/**
 * # Safety
 * `r` must be null or a live handle.
 */
uintptr_t qw_span_vector_count(const struct QwSpanReport *r);

/**
 * Copies zero vector `k` (9 entries) into `re` and `im`.
 *
 * # Safety
 * `r` must be a live handle; `re` and `im` must be valid for 9 writes.
 */
enum QwStatus qw_span_vector(const struct QwSpanReport *r, uintptr_t k, double *re, double *im);

const char *qw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUTRIT_WITNESS_H */
