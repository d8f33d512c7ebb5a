#ifndef CELLRED_H
#define CELLRED_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum CellredStatus {
  CELLRED_STATUS_OK = 0,
  CELLRED_STATUS_NULL_ARGUMENT = 1,
  CELLRED_STATUS_INVALID_UTF8 = 2,
  CELLRED_STATUS_UNSUPPORTED_TYPE = 3,
  CELLRED_STATUS_INVALID_INPUT = 4,
  CELLRED_STATUS_OUT_OF_RANGE = 5,
  CELLRED_STATUS_DATA_INTEGRITY = 6,
  CELLRED_STATUS_COMPUTATION_FAILED = 7,
  CELLRED_STATUS_PANIC = 8,
} CellredStatus;

/*
 Audit report for one type.
 */
typedef struct CellredAudit CellredAudit;

/*
 Weyl group with its Kazhdan-Lusztig data.
 */
typedef struct CellredKl CellredKl;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy of the last error message on this thread, or null if none.
 Release with `cellred_string_free`.
 */
char *cellred_last_error_message(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void cellred_string_free(char *s);

/*
 Library version as a static string.
 */
const char *cellred_version(void);

/*
 Runs the audit for one type (`"A1"`, ..., `"G2"`).

 # Safety
 `cartan_type` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CellredStatus cellred_audit_new(const char *cartan_type, struct CellredAudit **out);

/*
 Releases an audit handle. Null is ignored.

 # Safety
 `audit` must come from `cellred_audit_new` and not have been freed.
 */
void cellred_audit_free(struct CellredAudit *audit);

/*
 Number of checks in the report, or 0 for a null handle.

 # Safety
 `audit` must be null or a live handle.
 */
uintptr_t cellred_audit_check_count(const struct CellredAudit *audit);

/*
 Number of failed checks, or 0 for a null handle.

 # Safety
 `audit` must be null or a live handle.
 */
uintptr_t cellred_audit_failure_count(const struct CellredAudit *audit);

/*
 The report as JSON.

 # Safety
 `audit` must be a live handle and `out` a valid pointer.
 */
enum CellredStatus cellred_audit_to_json(const struct CellredAudit *audit, char **out);

/*
 Builds the Weyl group of `cartan_type` and its KL data.

 # Safety
 `cartan_type` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CellredStatus cellred_kl_new(const char *cartan_type, struct CellredKl **out);

/*
 Releases a KL handle. Null is ignored.

 # Safety
 `kl` must come from `cellred_kl_new` and not have been freed.
 */
void cellred_kl_free(struct CellredKl *kl);

/*
 Order of the Weyl group, or 0 for a null handle.

 # Safety
 `kl` must be null or a live handle.
 */
uintptr_t cellred_kl_group_order(const struct CellredKl *kl);

/*
 Index of the element spelled by `word` (digits, or `"e"`).

 # Safety
 `kl` must be a live handle, `word` a NUL-terminated string and `out` valid.
 */
enum CellredStatus cellred_kl_parse_word(const struct CellredKl *kl,
                                         const char *word,
                                         uintptr_t *out);

/*
 Coefficients of `P_{y,w}` (constant term first) written to `coeffs`.
 `len` receives the number of coefficients; pass `capacity = 0` to query
 it. Returns `OutOfRange` if `capacity` is too small.

 # Safety
 `kl` must be a live handle, `coeffs` valid for `capacity` writes, `len` valid.
 */
enum CellredStatus cellred_kl_poly(const struct CellredKl *kl,
                                   uintptr_t y,
                                   uintptr_t w,
                                   int64_t *coeffs,
                                   uintptr_t capacity,
                                   uintptr_t *len);

/*
 Value of the a-function at `w`.

 # Safety
 `kl` must be a live handle and `out` valid.
 */
enum CellredStatus cellred_kl_a_value(const struct CellredKl *kl, uintptr_t w, uintptr_t *out);

/*
 `dim V(lambda)` as a decimal string, `lambda` in fundamental-weight
 coordinates.

 # Safety
 `cartan_type` must be a NUL-terminated string, `coords` valid for `len`
 reads and `out` valid.
 */
enum CellredStatus cellred_weyl_dim(const char *cartan_type,
                                    const int64_t *coords,
                                    uintptr_t len,
                                    char **out);

/*
 The SL3 incidence experiment at `p` as JSON.

 # Safety
 `out` must be valid.
 */
enum CellredStatus cellred_sl3_json(uint64_t p, bool with_orbits, char **out);

/*
 A computed table (`"klpoly"`, `"cells"`, `"gamma"`, `"cwe"`, `"delta"`) as JSON.

 # Safety
 Both strings must be NUL-terminated and `out` valid.
 */
enum CellredStatus cellred_table_json(const char *cartan_type, const char *what, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CELLRED_H */
