#ifndef TROPBAL_H
#define TROPBAL_H

/* Generated by cbindgen. Do not edit. */

#include <stdbool.h>

typedef enum TbStatus {
  TB_STATUS_OK = 0,
  /**
   * `tb_check` finished and at least one vertex violates the condition.
   */
  TB_STATUS_VIOLATION = 1,
  TB_STATUS_ERR_NULL_POINTER = 2,
  TB_STATUS_ERR_UTF8 = 3,
  TB_STATUS_ERR_JSON = 4,
  TB_STATUS_ERR_PARSE = 5,
  TB_STATUS_ERR_INVALID = 6,
  TB_STATUS_ERR_NOT_IN_SKELETON = 7,
  TB_STATUS_ERR_UNKNOWN_NAME = 8,
  TB_STATUS_ERR_NOT_INVERTIBLE = 9,
  TB_STATUS_ERR_MISSING_DATA = 10,
  TB_STATUS_ERR_RELATION_VIOLATED = 11,
  TB_STATUS_ERR_VALIDATION = 12,
  TB_STATUS_ERR_IO = 13,
  TB_STATUS_ERR_PANIC = 14,
} TbStatus;

/**
 * Parsed tropical curve.
 */
typedef struct TbCurve TbCurve;

/**
 * Parsed degeneration: intersection complex plus α data.
 */
typedef struct TbDegeneration TbDegeneration;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a degeneration document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TbStatus tb_degeneration_from_json(const char *json, bool strict, struct TbDegeneration **out);

/**
 * # Safety
 * `deg` must come from [`tb_degeneration_from_json`] or be null.
 */
void tb_degeneration_free(struct TbDegeneration *deg);

/**
 * Parses a curve document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TbStatus tb_curve_from_json(const char *json, struct TbCurve **out);

/**
 * # Safety
 * `curve` must come from [`tb_curve_from_json`] or be null.
 */
void tb_curve_free(struct TbCurve *curve);

/**
 * Checks every vertex and writes the report as JSON.
 *
 * Returns `TB_STATUS_OK` when all vertices are balanced, `TB_STATUS_VIOLATION` when some
 * vertex is not, and `TB_STATUS_ERR_VALIDATION` when the inputs are invalid.
 *
 * # Safety
 * Handles must be live; `report_json` must be writable.
 */
enum TbStatus tb_check(const struct TbDegeneration *deg,
                       const struct TbCurve *curve,
                       bool strict,
                       char **report_json);

/**
 * Writes the α matrix of the stratum named by `stratum` (e.g. `"D0,D1"`).
 *
 * # Safety
 * `deg` must be live; `stratum` NUL-terminated; `out_json` writable.
 */
enum TbStatus tb_alpha(const struct TbDegeneration *deg, const char *stratum, char **out_json);

/**
 * Writes the face containing `point` (e.g. `"D0=1/2,D1=1/2"`).
 *
 * # Safety
 * `deg` must be live; `point` NUL-terminated; `out_json` writable.
 */
enum TbStatus tb_locate(const struct TbDegeneration *deg, const char *point, char **out_json);

/**
 * Writes the embedded maximal faces of the skeleton.
 *
 * # Safety
 * `deg` must be live; `out_json` writable.
 */
enum TbStatus tb_skeleton(const struct TbDegeneration *deg, char **out_json);

/**
 * Computes edge weights from an annulus document.
 *
 * # Safety
 * `annuli_json` NUL-terminated; `out_json` writable.
 */
enum TbStatus tb_weights(const char *annuli_json, char **out_json);

/**
 * Writes a built-in example as `{degeneration, curve, annuli}`.
 *
 * # Safety
 * `name` NUL-terminated; `out_json` writable.
 */
enum TbStatus tb_fixture(const char *name, char **out_json);

/**
 * JSON `{error, detail}` for the last failure on this thread, or null.
 * The pointer stays valid until the next call into this library.
 */
const char *tb_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void tb_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *tb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPBAL_H */
