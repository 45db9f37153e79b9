#ifndef D4VERIFY_H
#define D4VERIFY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum D4vStatus {
  D4V_STATUS_OK = 0,
  D4V_STATUS_NULL_POINTER = 1,
  D4V_STATUS_INVALID_ARGUMENT = 2,
  D4V_STATUS_CAP_EXCEEDED = 3,
  D4V_STATUS_IDENTITY_FAILED = 4,
  D4V_STATUS_OUT_OF_RANGE = 5,
  D4V_STATUS_IO = 6,
  D4V_STATUS_PANIC = 7,
} D4vStatus;

typedef enum D4vProfile {
  D4V_PROFILE_QUICK = 0,
  D4V_PROFILE_FULL = 1,
} D4vProfile;

// A 2m-shell of D4.
typedef struct D4vShell D4vShell;

// τ2(1..=bound).
typedef struct D4vTau2Table D4vTau2Table;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *d4v_last_error(void);

// Library version as a static NUL-terminated string.
const char *d4v_version(void);

// |(D4)_{2m}| from the divisor formula.
//
// # Safety
// `out` must be null or valid for writes.
enum D4vStatus d4v_jacobi_count(uint64_t m, uint64_t *out);

// Enumerates the 2m-shell into a new handle.
//
// # Safety
// `out` must be null or valid for writes.
enum D4vStatus d4v_shell_new(uint64_t m, struct D4vShell **out);

// Number of points in the shell; 0 for a null handle.
//
// # Safety
// `shell` must be null or a live handle from [`d4v_shell_new`].
size_t d4v_shell_len(const struct D4vShell *shell);

// Copies the coordinates of point `index` (in sorted shell order) to `out[0..4]`.
//
// # Safety
// `shell` must be null or a live handle; `out` must be null or valid for
// four writes.
enum D4vStatus d4v_shell_point(const struct D4vShell *shell, size_t index, int64_t *out);

// # Safety
// `shell` must be null or a live handle, not used afterwards.
void d4v_shell_free(struct D4vShell *shell);

// Bit ℓ of `*out_mask` is set when the normalized 2m-shell is a spherical
// {ℓ}-design, for 1 ≤ ℓ ≤ max_degree (max_degree ≤ 63).
//
// # Safety
// `out_mask` must be null or valid for writes.
enum D4vStatus d4v_harmonic_strength_mask(uint64_t m, uint32_t max_degree, uint64_t *out_mask);

// Number of unit-group orbits in the 2m-shell, each certified as a copy of
// the root system.
//
// # Safety
// `out` must be null or valid for writes.
enum D4vStatus d4v_orbit_count(uint64_t m, uint64_t *out);

// LP lower bound of the design certificate as a reduced fraction.
//
// # Safety
// `num` and `den` must be null or valid for writes.
enum D4vStatus d4v_lp_design_bound(int64_t *num, int64_t *den);

// LP upper bound of the code certificate for a1 = a1_num / a1_den ≥ 0.
//
// # Safety
// `num` and `den` must be null or valid for writes.
enum D4vStatus d4v_lp_code_bound(int64_t a1_num, int64_t a1_den, int64_t *num, int64_t *den);

// Builds τ2(1..=bound) into a new handle.
//
// # Safety
// `out` must be null or valid for writes.
enum D4vStatus d4v_tau2_table_new(size_t bound, struct D4vTau2Table **out);

// # Safety
// `table` must be null or a live handle.
size_t d4v_tau2_table_bound(const struct D4vTau2Table *table);

// τ2(m) as an i64; `D4V_STATUS_OUT_OF_RANGE` if m is outside the table or
// the value does not fit.
//
// # Safety
// `table` must be null or a live handle; `out` null or valid for writes.
enum D4vStatus d4v_tau2_get(const struct D4vTau2Table *table, size_t m, int64_t *out);

// τ2(m) in decimal, or null on error. Free with [`d4v_string_free`].
//
// # Safety
// `table` must be null or a live handle.
char *d4v_tau2_get_string(const struct D4vTau2Table *table, size_t m);

// # Safety
// `table` must be null or a live handle, not used afterwards.
void d4v_tau2_table_free(struct D4vTau2Table *table);

// Runs every acceptance check and returns the JSON report in `*out_json`
// (free with [`d4v_string_free`]) and whether all checks passed.
//
// # Safety
// `out_json` and `out_all_pass` must be null or valid for writes.
enum D4vStatus d4v_verify_all(enum D4vProfile profile, char **out_json, bool *out_all_pass);

// Frees a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library, not used afterwards.
void d4v_string_free(char *s);

// Length of a NUL-terminated string returned by this library, for callers
// without `strlen`.
//
// # Safety
// `s` must be null or a valid NUL-terminated string.
size_t d4v_string_len(const char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* D4VERIFY_H */
