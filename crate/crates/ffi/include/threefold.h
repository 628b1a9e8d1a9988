#ifndef THREEFOLD_H
#define THREEFOLD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TfStatus {
  TfStatus_Ok = 0,
  TfStatus_NullPointer = 1,
  TfStatus_InvalidUtf8 = 2,
  /**
   * Malformed or non-cubic polynomial.
   */
  TfStatus_ParseError = 3,
  /**
   * Unknown command name or bad tracker settings.
   */
  TfStatus_InvalidArgument = 4,
  /**
   * The report was produced but some command failed.
   */
  TfStatus_PipelineError = 5,
  /**
   * The report was produced but an invariant was violated.
   */
  TfStatus_CertificationFailure = 6,
  /**
   * The requested value is absent from the report.
   */
  TfStatus_Unavailable = 7,
  TfStatus_Panic = 8,
} TfStatus;

/**
 * A parsed cubic form in x0..x4 with rational coefficients.
 */
typedef struct TfCubic TfCubic;

/**
 * The result of [`tf_analyze`].
 */
typedef struct TfReport TfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next call.
 */
const char *tf_last_error(void);

/**
 * Parses `text`, e.g. "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", into `*out`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum TfStatus tf_cubic_parse(const char *text, struct TfCubic **out);

/**
 * # Safety
 * `cubic` is NULL or came from [`tf_cubic_parse`] and was not freed.
 */
void tf_cubic_free(struct TfCubic *cubic);

/**
 * Canonical text of the form; free with [`tf_string_free`]. NULL on a null handle.
 *
 * # Safety
 * `cubic` is NULL or a live handle.
 */
char *tf_cubic_to_string(const struct TfCubic *cubic);

/**
 * Runs the comma-separated `commands` (NULL for all) with the given seed.
 * `settings_json` is NULL or a JSON object of tracker settings overriding the defaults.
 *
 * A report is stored in `*out` whenever the status is Ok, PipelineError or
 * CertificationFailure.
 *
 * # Safety
 * `cubic` is a live handle; string arguments are NULL or NUL-terminated; `out` is writable.
 */
enum TfStatus tf_analyze(const struct TfCubic *cubic,
                         const char *commands,
                         uint64_t seed,
                         const char *settings_json,
                         struct TfReport **out);

/**
 * # Safety
 * `report` is NULL or came from [`tf_analyze`] and was not freed.
 */
void tf_report_free(struct TfReport *report);

/**
 * The JSON report; free with [`tf_string_free`]. NULL on a null handle.
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
char *tf_report_json(const struct TfReport *report);

/**
 * The defect σ, when computed.
 *
 * # Safety
 * `report` is a live handle; `out` is writable.
 */
enum TfStatus tf_report_sigma(const struct TfReport *report, uint32_t *out);

/**
 * Exit code the command-line tool would return for this report.
 *
 * # Safety
 * `report` is NULL or a live handle.
 */
int32_t tf_report_exit_code(const struct TfReport *report);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void tf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THREEFOLD_H */
