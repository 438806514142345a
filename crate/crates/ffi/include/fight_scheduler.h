#ifndef FIGHT_SCHEDULER_H
#define FIGHT_SCHEDULER_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_INFEASIBLE = 1,
  FS_STATUS_TIMEOUT = 2,
  FS_STATUS_NULL_POINTER = 3,
  FS_STATUS_INVALID_UTF8 = 4,
  FS_STATUS_INVALID_INPUT = 5,
  FS_STATUS_INVALID_ARGUMENT = 6,
  FS_STATUS_NO_SIMPLE_SCHEDULE = 7,
  FS_STATUS_PANIC = 8,
} FsStatus;

typedef enum FsFairness {
  FS_FAIRNESS_NONE = 0,
  FS_FAIRNESS_WEAK = 1,
  FS_FAIRNESS_FAIR = 2,
  FS_FAIRNESS_STRONG = 3,
} FsFairness;

typedef enum FsFormat {
  FS_FORMAT_TABLE = 0,
  FS_FORMAT_MACHINE = 1,
  FS_FORMAT_JSON = 2,
} FsFormat;

/**
 * Parsed instance.
 */
typedef struct FsInstance FsInstance;

/**
 * A schedule; only meaningful together with the instance it was made for.
 */
typedef struct FsSchedule FsSchedule;

typedef struct FsCriteria {
  enum FsFairness fairness;
  bool non_cooperative;
  bool order_fair;
  bool simple;
} FsCriteria;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call on the same thread; do not free.
 */
const char *fs_last_error(void);

/**
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FsStatus fs_instance_parse(const char *text, struct FsInstance **out);

/**
 * # Safety
 * `instance` must come from `fs_instance_parse` and not be freed already.
 */
void fs_instance_free(struct FsInstance *instance);

/**
 * Number of teams, or 0 for NULL.
 *
 * # Safety
 * `instance` must be NULL or a live handle.
 */
size_t fs_instance_team_count(const struct FsInstance *instance);

/**
 * # Safety
 * `instance` must be a live handle, `text` a nul-terminated string, `out` valid.
 */
enum FsStatus fs_schedule_parse(const struct FsInstance *instance,
                                const char *text,
                                struct FsSchedule **out);

/**
 * # Safety
 * `schedule` must be NULL or a handle not freed already.
 */
void fs_schedule_free(struct FsSchedule *schedule);

/**
 * Searches for a schedule. Returns `FS_STATUS_OK` with `*out` set, or
 * `FS_STATUS_INFEASIBLE` / `FS_STATUS_TIMEOUT` with `*out` NULL.
 *
 * # Safety
 * `instance` must be a live handle and `out` valid.
 */
enum FsStatus fs_solve(const struct FsInstance *instance,
                       struct FsCriteria criteria,
                       double time_limit_seconds,
                       uint64_t seed,
                       struct FsSchedule **out);

/**
 * Checks a schedule. `*passed` receives the overall verdict; when
 * `report_json` is not NULL it receives the full report as JSON.
 *
 * # Safety
 * Handles must be live; `passed` valid; `report_json` NULL or valid.
 */
enum FsStatus fs_validate(const struct FsInstance *instance,
                          const struct FsSchedule *schedule,
                          struct FsCriteria criteria,
                          bool *passed,
                          char **report_json);

/**
 * Renders a schedule as text.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum FsStatus fs_schedule_render(const struct FsInstance *instance,
                                 const struct FsSchedule *schedule,
                                 enum FsFormat format,
                                 char **out);

/**
 * Copy of `schedule` with stages re-assigned so that it is order-fair.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum FsStatus fs_order_fair(const struct FsInstance *instance,
                            const struct FsSchedule *schedule,
                            struct FsSchedule **out);

/**
 * Builds a schedule in which every team keeps its room.
 *
 * # Safety
 * `instance` must be a live handle and `out` valid.
 */
enum FsStatus fs_simple_schedule(const struct FsInstance *instance, struct FsSchedule **out);

/**
 * The 0-1 model of `instance` under `criteria` in LP format.
 *
 * # Safety
 * `instance` must be a live handle and `out` valid.
 */
enum FsStatus fs_export_lp(const struct FsInstance *instance,
                           struct FsCriteria criteria,
                           char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string from this library not freed already.
 */
void fs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIGHT_SCHEDULER_H */
