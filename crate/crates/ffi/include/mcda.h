#ifndef MCDA_H
#define MCDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Criterion direction for [`mcda_problem_new`].
typedef enum McdaDirection {
  MCDA_DIRECTION_MAX = 0,
  MCDA_DIRECTION_MIN = 1,
} McdaDirection;

// Consensus rule for [`mcda_aggregate`].
typedef enum McdaRule {
  MCDA_RULE_MODE = 0,
  MCDA_RULE_BORDA = 1,
  MCDA_RULE_COPELAND = 2,
} McdaRule;

// Status codes. 1 to 4 match the CLI exit codes.
typedef enum McdaStatus {
  MCDA_STATUS_OK = 0,
  MCDA_STATUS_USAGE = 1,
  MCDA_STATUS_DATA = 2,
  MCDA_STATUS_METHOD = 3,
  MCDA_STATUS_NETWORK = 4,
  // Null pointer, invalid UTF-8 or a buffer length that does not match.
  MCDA_STATUS_INVALID_ARGUMENT = 5,
  // A Rust panic was caught at the boundary.
  MCDA_STATUS_PANIC = 6,
} McdaStatus;

// Opaque decision problem.
typedef struct McdaProblem McdaProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the
// same thread.
const char *mcda_last_error(void);

// Library version as a static NUL-terminated string.
const char *mcda_version(void);

// Parses a decision problem from CSV text (criterion names, directions,
// optional `weights` row, then one row per alternative).
//
// # Safety
// `csv` must be a NUL-terminated string; `out` must be writable.
enum McdaStatus mcda_problem_from_csv(const char *csv, struct McdaProblem **out);

// Loads a decision problem from a CSV, JSON or TOML file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum McdaStatus mcda_problem_load(const char *path, struct McdaProblem **out);

// Builds a problem from a row-major `n_alternatives x n_criteria` matrix.
// Alternatives are labeled a1, a2, ... and criteria c1, c2, ...
// `weights` may be NULL (no weights).
//
// # Safety
// `matrix` must hold `n_alternatives * n_criteria` values, `directions`
// and (if not NULL) `weights` must hold `n_criteria` values.
enum McdaStatus mcda_problem_new(size_t n_alternatives,
                                 size_t n_criteria,
                                 const double *matrix,
                                 const enum McdaDirection *directions,
                                 const double *weights,
                                 struct McdaProblem **out);

// Releases a problem. NULL is ignored.
//
// # Safety
// `problem` must come from a `mcda_problem_*` constructor and not be used
// afterwards.
void mcda_problem_free(struct McdaProblem *problem);

// Number of alternatives (0 for NULL).
//
// # Safety
// `problem` must be NULL or a live handle.
size_t mcda_problem_alternatives(const struct McdaProblem *problem);

// Number of criteria (0 for NULL).
//
// # Safety
// `problem` must be NULL or a live handle.
size_t mcda_problem_criteria(const struct McdaProblem *problem);

// Ranks the alternatives with a scoring or outranking method (`topsis`,
// `promethee_ii`, `ec_promethee`, ...). `seed` is used by stochastic
// methods. Writes one score and one rank (1 = best) per alternative, and
// whether a larger score is better into `higher_is_better` unless NULL.
//
// # Safety
// `method` and (if not NULL) `params` must be NUL-terminated; `scores` and
// `ranks` must each hold `len` elements, `len` = number of alternatives.
enum McdaStatus mcda_rank(const struct McdaProblem *problem,
                          const char *method,
                          const char *params,
                          uint64_t seed,
                          double *scores,
                          size_t *ranks,
                          size_t len,
                          bool *higher_is_better);

// Criterion weights from a weighting method (`entropy`, `critic`, `cilos`,
// `idocriw`, `merec`, `bwm`). BWM reads `bwm.mic` and `bwm.lic` from
// `params`.
//
// # Safety
// `method` and (if not NULL) `params` must be NUL-terminated; `weights`
// must hold `len` elements, `len` = number of criteria.
enum McdaStatus mcda_weights(const struct McdaProblem *problem,
                             const char *method,
                             const char *params,
                             double *weights,
                             size_t len);

// Consensus over `n_rows` rank vectors stored row-major
// (`n_rows x n_alternatives`). Writes the consensus rank of each
// alternative (1 = best).
//
// # Safety
// `ranks` must hold `n_rows * n_alternatives` values and `out` must hold
// `n_alternatives`.
enum McdaStatus mcda_aggregate(const size_t *ranks,
                               size_t n_rows,
                               size_t n_alternatives,
                               enum McdaRule rule,
                               size_t *out);

// Kendall tau-b of two equally long vectors. Writes NaN when undefined
// (a constant vector).
//
// # Safety
// `a` and `b` must hold `len` values; `out` must be writable.
enum McdaStatus mcda_kendall_tau(const double *a, const double *b, size_t len, double *out);

// Pearson correlation of two equally long vectors. Writes NaN when
// undefined (a constant vector).
//
// # Safety
// `a` and `b` must hold `len` values; `out` must be writable.
enum McdaStatus mcda_pearson(const double *a, const double *b, size_t len, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCDA_H */
