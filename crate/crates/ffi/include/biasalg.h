#ifndef BIASALG_H
#define BIASALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BiasStatus {
  BIAS_STATUS_OK = 0,
  BIAS_STATUS_NULL_POINTER = 1,
  BIAS_STATUS_INVALID_UTF8 = 2,
  BIAS_STATUS_INVALID_INPUT = 3,
  BIAS_STATUS_HYPOTHESIS_VIOLATED = 4,
  BIAS_STATUS_TOO_LARGE = 5,
  BIAS_STATUS_CHECK_FAILED = 6,
  BIAS_STATUS_BUFFER_TOO_SMALL = 7,
  BIAS_STATUS_PANIC = 8,
} BiasStatus;

/**
 * Opaque handle to a matroid with a linear class.
 */
typedef struct BiasProblem BiasProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a problem from JSON. On success `*out` owns a handle to be released
 * with `bias_problem_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BiasStatus bias_problem_from_json(const char *json, struct BiasProblem **out);

/**
 * # Safety
 * `problem` must be null or a handle from `bias_problem_from_json` that has
 * not been freed.
 */
void bias_problem_free(struct BiasProblem *problem);

/**
 * Size of the ground set.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum BiasStatus bias_problem_ground_size(const struct BiasProblem *problem, size_t *out);

/**
 * Total dimension of the algebra.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum BiasStatus bias_problem_dim(const struct BiasProblem *problem, size_t *out);

/**
 * Graded dimensions. Writes `*len` entries into `buf` if `capacity`
 * suffices; otherwise returns `BIAS_STATUS_BUFFER_TOO_SMALL` with `*len`
 * set to the required size. `buf` may be null when `capacity` is 0.
 *
 * # Safety
 * `problem` must be a live handle, `len` a valid pointer and `buf` valid
 * for `capacity` writes.
 */
enum BiasStatus bias_problem_graded_dims(const struct BiasProblem *problem,
                                         size_t *buf,
                                         size_t capacity,
                                         size_t *len);

/**
 * Expansion of `e_X` in the NBC basis as a JSON array of
 * `{"set": [...], "coefficient": c}`. The elements are read as a set, so
 * the monomial is taken in increasing order. Free the string with
 * `bias_string_free`.
 *
 * # Safety
 * `elements` must be valid for `count` reads (or null with `count` 0);
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum BiasStatus bias_problem_expand(const struct BiasProblem *problem,
                                    const uint32_t *elements,
                                    size_t count,
                                    char **out);

/**
 * Check the deletion-contraction sequence at `element`. `*passed` is 1 when
 * every part of the check holds and 0 otherwise.
 *
 * # Safety
 * `problem` must be a live handle and `passed` a valid pointer.
 */
enum BiasStatus bias_problem_check_sequence(const struct BiasProblem *problem,
                                            uint32_t element,
                                            int32_t *passed);

/**
 * Run a command-line command, e.g. `{"dim"}` or `{"expand", "--set", "2,3"}`,
 * on `input_json` (which may be null for `suite` over the bundled corpus).
 * `*report` receives the JSON report and `*exit_code` the exit code the
 * command line would use. A report is produced even when the command's
 * checks fail; the status is then `BIAS_STATUS_CHECK_FAILED`.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `input_json` must be null
 * or NUL-terminated; `report` and `exit_code` must be valid pointers.
 */
enum BiasStatus bias_run_command(const char *const *argv,
                                 size_t argc,
                                 const char *input_json,
                                 char **report,
                                 int32_t *exit_code);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library that has not been freed.
 */
void bias_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *bias_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIASALG_H */
