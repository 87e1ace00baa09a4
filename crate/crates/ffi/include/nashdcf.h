#ifndef NASHDCF_H
#define NASHDCF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum NashStatus {
  NASH_STATUS_OK = 0,
  NASH_STATUS_NULL_ARGUMENT = 1,
  NASH_STATUS_INVALID_UTF8 = 2,
  /**
   * The script ran, but at least one command reported an error.
   */
  NASH_STATUS_COMMAND_FAILED = 3,
  NASH_STATUS_IO = 4,
  NASH_STATUS_VERSION_MISMATCH = 5,
  NASH_STATUS_CORRUPT_RECORD = 6,
  NASH_STATUS_TRUNCATED = 7,
  NASH_STATUS_ENGINE = 8,
  NASH_STATUS_PANIC = 9,
} NashStatus;

/**
 * Opaque engine handle.
 */
typedef struct NashEngine NashEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A new engine, or null on allocation failure.
 */
struct NashEngine *nash_engine_new(void);

/**
 * # Safety
 * `engine` must come from this library and not be used afterwards.
 */
void nash_engine_free(struct NashEngine *engine);

/**
 * Run a script. `*output` receives the printed lines (free with
 * [`nash_string_free`]) and `*errors` the number of failed commands; either
 * pointer may be null.
 *
 * # Safety
 * `engine` must be a live handle and `script` a NUL-terminated string.
 */
enum NashStatus nash_engine_run(struct NashEngine *engine,
                                const char *script,
                                char **output,
                                size_t *errors);

/**
 * Write the session to `path`.
 *
 * # Safety
 * `engine` must be a live handle and `path` a NUL-terminated string.
 */
enum NashStatus nash_engine_save(const struct NashEngine *engine, const char *path);

/**
 * The session as text in `*out`.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
enum NashStatus nash_engine_save_string(const struct NashEngine *engine, char **out);

/**
 * Replay a session file into a new engine stored in `*out`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum NashStatus nash_engine_load(const char *path, struct NashEngine **out);

/**
 * Message for the last failure on this thread; valid until the next call.
 */
const char *nash_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void nash_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *nash_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NASHDCF_H */
