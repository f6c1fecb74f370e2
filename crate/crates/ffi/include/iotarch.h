#ifndef IOTARCH_H
#define IOTARCH_H

/* Generated by cbindgen from iotarch-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum IotArchStatus {
  IOT_ARCH_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  IOT_ARCH_STATUS_NULL_ARGUMENT = 1,
  /**
   * An input string was not valid UTF-8.
   */
  IOT_ARCH_STATUS_INVALID_UTF8 = 2,
  /**
   * The model text did not parse; see `iotarch_last_error`.
   */
  IOT_ARCH_STATUS_PARSE_ERROR = 3,
  /**
   * The model failed the consistency rules required for the operation.
   */
  IOT_ARCH_STATUS_INCONSISTENT = 4,
  /**
   * The scenario was malformed or an event was rejected.
   */
  IOT_ARCH_STATUS_SCENARIO_ERROR = 5,
  /**
   * A filesystem operation failed.
   */
  IOT_ARCH_STATUS_IO_ERROR = 6,
  /**
   * An argument was outside its valid range.
   */
  IOT_ARCH_STATUS_INVALID_ARGUMENT = 7,
  /**
   * The library panicked; this is a bug worth reporting.
   */
  IOT_ARCH_STATUS_PANIC = 8,
} IotArchStatus;

/**
 * An immutable, validated system model.
 */
typedef struct IotArchModel IotArchModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 *
 * The pointer stays valid until the next call into this library from the
 * same thread. Never free it.
 */
const char *iotarch_last_error(void);

/**
 * Library version as a static NUL-terminated string. Never free it.
 */
const char *iotarch_version(void);

/**
 * Frees a string returned by this library. Null is accepted.
 *
 * # Safety
 * `text` must be a pointer previously returned through an out-parameter of
 * this library and not yet freed.
 */
void iotarch_string_free(char *text);

/**
 * Frees a model handle. Null is accepted.
 *
 * # Safety
 * `model` must come from [`iotarch_parse`] and not have been freed before.
 */
void iotarch_model_free(struct IotArchModel *model);

/**
 * Parses model text into a handle stored in `out_model`.
 *
 * On `PARSE_ERROR` the error message lists every fault with its
 * line:column location.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_model` must be a valid
 * pointer to writable memory.
 */
enum IotArchStatus iotarch_parse(const char *text, struct IotArchModel **out_model);

/**
 * Writes the canonical text form of the model into `out_text`.
 *
 * # Safety
 * `model` must be a live handle; `out_text` must be writable.
 */
enum IotArchStatus iotarch_model_format(const struct IotArchModel *model, char **out_text);

/**
 * Runs every consistency rule.
 *
 * The report is written to `out_report` (line-oriented text, or JSON
 * records when `structured` is set) and the functioning verdict to
 * `out_consistent`. The status is OK even for inconsistent models; the
 * verdict is data, not an error.
 *
 * # Safety
 * `model` must be a live handle; `out_report` and `out_consistent` must be
 * writable.
 */
enum IotArchStatus iotarch_model_check(const struct IotArchModel *model,
                                       bool strict_functional,
                                       bool structured,
                                       char **out_report,
                                       bool *out_consistent);

/**
 * Runs a scenario (`tick sensorId value` lines) and writes the trace wire
 * text to `out_trace`.
 *
 * Returns `INCONSISTENT` when the model fails the consistency gate and
 * `SCENARIO_ERROR` when the scenario is malformed or an event is rejected.
 *
 * # Safety
 * `model` must be a live handle; `scenario` must be NUL-terminated;
 * `out_trace` must be writable.
 */
enum IotArchStatus iotarch_model_simulate(const struct IotArchModel *model,
                                          const char *scenario,
                                          char **out_trace);

/**
 * Number of Event-B instance contexts generated per model.
 */
size_t iotarch_eventb_context_count(void);

/**
 * Writes the name and text of one generated Event-B context
 * (index 0..`iotarch_eventb_context_count()`).
 *
 * # Safety
 * `model` must be a live handle; `out_name` and `out_text` must be
 * writable.
 */
enum IotArchStatus iotarch_model_eventb_context(const struct IotArchModel *model,
                                                size_t index,
                                                char **out_name,
                                                char **out_text);

/**
 * Writes the three instance contexts plus the generic layer into
 * `out_dir`, creating it if needed.
 *
 * # Safety
 * `model` must be a live handle; `out_dir` must be NUL-terminated.
 */
enum IotArchStatus iotarch_model_emit_eventb(const struct IotArchModel *model, const char *out_dir);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IOTARCH_H */
