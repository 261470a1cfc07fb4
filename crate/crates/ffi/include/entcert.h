#ifndef ENTCERT_H
#define ENTCERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EntcertStatus {
  ENTCERT_STATUS_OK = 0,
  ENTCERT_STATUS_NULL_POINTER = 1,
  ENTCERT_STATUS_INVALID_ARGUMENT = 2,
  ENTCERT_STATUS_DIMENSION_MISMATCH = 3,
  ENTCERT_STATUS_VALIDATION = 4,
  ENTCERT_STATUS_NOT_INVERTIBLE = 5,
  ENTCERT_STATUS_CAPACITY = 6,
  ENTCERT_STATUS_NUMERICAL = 7,
  ENTCERT_STATUS_INTERNAL = 8,
} EntcertStatus;

/**
 * Which end of the admissible scaling interval to compute.
 */
typedef enum EntcertExtreme {
  ENTCERT_EXTREME_MAX = 0,
  ENTCERT_EXTREME_MIN = 1,
} EntcertExtreme;

typedef enum EntcertAlphaStatus {
  ENTCERT_ALPHA_STATUS_OPTIMAL = 0,
  ENTCERT_ALPHA_STATUS_UNBOUNDED = 1,
  ENTCERT_ALPHA_STATUS_INFEASIBLE = 2,
} EntcertAlphaStatus;

/**
 * Opaque Hermitian operator on a multipartite space.
 */
typedef struct EntcertOperator EntcertOperator;

typedef struct EntcertDepth {
  bool certified;
  /**
   * Certified depth bound; 0 when not certified.
   */
  size_t depth;
  /**
   * Smallest eigenvalue of the best preimage.
   */
  double min_eigenvalue;
} EntcertDepth;

typedef struct EntcertRange {
  double min;
  double max;
  bool empty;
} EntcertRange;

typedef struct EntcertAlpha {
  /**
   * `±inf` when unbounded, NaN when infeasible.
   */
  double alpha_star;
  enum EntcertAlphaStatus status;
} EntcertAlpha;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *entcert_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *entcert_version(void);

/**
 * Builds an operator from row-major real and imaginary parts of length
 * `D²`, where `D` is the product of `local_dims`. `im` may be null for a
 * real operator. Free the result with [`entcert_operator_free`].
 *
 * # Safety
 * Pointers must be valid for the given lengths; `out` must be writable.
 */
enum EntcertStatus entcert_operator_new(const size_t *local_dims,
                                        size_t num_parties,
                                        const double *re,
                                        const double *im,
                                        size_t len,
                                        struct EntcertOperator **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `op` must be null or a handle not yet freed.
 */
void entcert_operator_free(struct EntcertOperator *op);

/**
 * Total Hilbert-space dimension.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum EntcertStatus entcert_operator_dim(const struct EntcertOperator *op, size_t *out);

/**
 * Smallest eigenvalue of the partial transpose on the listed parties.
 *
 * # Safety
 * `op` must be a live handle, `parties` valid for `num` reads, `out`
 * writable.
 */
enum EntcertStatus entcert_pt_min_eigenvalue(const struct EntcertOperator *op,
                                             const size_t *parties,
                                             size_t num,
                                             double *out);

/**
 * Depth certificate `N − n` from the reduction-map inverse.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum EntcertStatus entcert_certify_depth(const struct EntcertOperator *op,
                                         size_t n,
                                         double tol,
                                         struct EntcertDepth *out);

/**
 * Admissible α range for diagonal symmetric states of `n` qudits.
 *
 * # Safety
 * `out` must be writable.
 */
enum EntcertStatus entcert_ds_alpha_range(size_t n, size_t d, struct EntcertRange *out);

/**
 * Scaling factor for the two-body correlation functions `c[0..3]` of `n`
 * spins.
 *
 * # Safety
 * `c` must point to three readable values; `out` must be writable.
 */
enum EntcertStatus entcert_toth_alpha(size_t n,
                                      const double *c,
                                      enum EntcertExtreme which,
                                      struct EntcertAlpha *out);

/**
 * Scaling factor of a full correlator vector against the local polytope.
 * Entries follow the library's mixed-radix option order; `im` may be null
 * for real correlators.
 *
 * # Safety
 * `re` (and `im` when non-null) must be valid for `len` reads; `out` must
 * be writable.
 */
enum EntcertStatus entcert_lhvm_alpha(size_t parties,
                                      size_t settings,
                                      size_t outcomes,
                                      const double *re,
                                      const double *im,
                                      size_t len,
                                      enum EntcertExtreme which,
                                      struct EntcertAlpha *out);

/**
 * Scaling factor in the permutationally invariant projection;
 * `s = [S0, S1, S00, S01, S11]`.
 *
 * # Safety
 * `s` must point to five readable values; `out` must be writable.
 */
enum EntcertStatus entcert_pi_alpha(size_t n,
                                    const double *s,
                                    enum EntcertExtreme which,
                                    struct EntcertAlpha *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTCERT_H */
