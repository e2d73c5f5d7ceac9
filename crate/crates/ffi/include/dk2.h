#ifndef DK2_H
#define DK2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum Dk2Status {
  DK2_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DK2_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DK2_STATUS_INVALID_UTF8 = 2,
  /**
   * The command line was rejected, or asked for help or the version.
   */
  DK2_STATUS_USAGE = 3,
  /**
   * Text input could not be parsed.
   */
  DK2_STATUS_PARSE = 4,
  /**
   * The engine reported an error while computing.
   */
  DK2_STATUS_ENGINE = 5,
  /**
   * The engine panicked. This is a bug.
   */
  DK2_STATUS_PANIC = 6,
} Dk2Status;

/**
 * An element of the Drinfeld-Kohno 2-algebra with exact coefficients.
 */
typedef struct Dk2Element Dk2Element;

/**
 * A finished verification report.
 */
typedef struct Dk2Report Dk2Report;

/**
 * A truncated power series in ħ with exact coefficients.
 */
typedef struct Dk2Series Dk2Series;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or an empty string.
 *
 * The pointer stays valid until the next dk2 call on the same thread.
 */
const char *dk2_last_error(void);

/**
 * Engine version as a static NUL-terminated string.
 */
const char *dk2_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from a dk2 function that documents ownership transfer, and must not be freed twice.
 */
void dk2_string_free(char *s);

/**
 * Runs a `dk2` command line such as `{"dk2", "check", "relations", "--n", "3"}` and stores the
 * report in `*out`. Output flags like `--out` and `--text` are accepted but nothing is printed.
 *
 * # Safety
 * `argv` must point to `argc` valid NUL-terminated strings and `out` must be writable.
 */
enum Dk2Status dk2_run(const char *const *argv, size_t argc, struct Dk2Report **out);

/**
 * Process exit code the `dk2` binary would return for this report: 0 pass, 3 finding, 2 failure.
 *
 * # Safety
 * `report` must be a live handle from [`dk2_run`].
 */
int32_t dk2_report_exit_code(const struct Dk2Report *report);

/**
 * The report as pretty-printed JSON. Free the result with [`dk2_string_free`]. Returns null for a
 * null handle.
 *
 * # Safety
 * `report` must be null or a live handle from [`dk2_run`].
 */
char *dk2_report_json(const struct Dk2Report *report);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `report` must be null or a handle from [`dk2_run`] that has not been freed.
 */
void dk2_report_free(struct Dk2Report *report);

/**
 * Parses an element in ambient `n` (for example `"2*a12.a23 + (-1)*[|l123|]"`) into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` must be writable.
 */
enum Dk2Status dk2_element_parse(uint8_t n, const char *text, struct Dk2Element **out);

/**
 * Stores the boundary ∂x in `*out` as a new handle.
 *
 * # Safety
 * `x` must be a live element handle and `out` must be writable.
 */
enum Dk2Status dk2_element_boundary(const struct Dk2Element *x, struct Dk2Element **out);

/**
 * True when the element is exactly zero. A null handle counts as zero.
 *
 * # Safety
 * `x` must be null or a live element handle.
 */
bool dk2_element_is_zero(const struct Dk2Element *x);

/**
 * Canonical text of an element. Free the result with [`dk2_string_free`].
 *
 * # Safety
 * `x` must be null or a live element handle.
 */
char *dk2_element_to_string(const struct Dk2Element *x);

/**
 * Releases an element. Null is ignored.
 *
 * # Safety
 * `x` must be null or an element handle that has not been freed.
 */
void dk2_element_free(struct Dk2Element *x);

/**
 * Builds the Drinfeld associator Φ(t12, t23) through ħ^`order` in the named variant
 * (`"direct"`, `"compactA"` or `"compactB"`).
 *
 * # Safety
 * `variant` must be a NUL-terminated string and `out` must be writable.
 */
enum Dk2Status dk2_phi(size_t order, const char *variant, struct Dk2Series **out);

/**
 * Truncation order of a series, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
size_t dk2_series_order(const struct Dk2Series *s);

/**
 * Coefficients as a JSON object `{"h^0": "...", ...}`. Free the result with [`dk2_string_free`].
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
char *dk2_series_json(const struct Dk2Series *s);

/**
 * Releases a series. Null is ignored.
 *
 * # Safety
 * `s` must be null or a series handle that has not been freed.
 */
void dk2_series_free(struct Dk2Series *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DK2_H */
