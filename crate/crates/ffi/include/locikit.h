#ifndef LOCIKIT_H
#define LOCIKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LkStatus {
  LK_STATUS_OK = 0,
  LK_STATUS_NULL_POINTER = 1,
  LK_STATUS_INVALID_UTF8 = 2,
  LK_STATUS_PARSE = 3,
  LK_STATUS_VALIDATION = 4,
  LK_STATUS_NOT_FOUND = 5,
  LK_STATUS_INVALID_ARGUMENT = 6,
  LK_STATUS_RESOURCE_LIMIT = 7,
  LK_STATUS_INCONCLUSIVE = 8,
  LK_STATUS_HYPOTHESIS_FAILED = 9,
  LK_STATUS_MATH = 10,
  LK_STATUS_PANIC = 11,
} LkStatus;

// A parsed and validated fixture.
typedef struct LkFixture LkFixture;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *lk_version(void);

// Message for the last failed call on this thread; empty after a
// successful call. Valid until the next call on the same thread.
const char *lk_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void lk_string_free(char *s);

// Parses fixture text.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum LkStatus lk_fixture_parse(const char *text, struct LkFixture **out);

// # Safety
// `fx` must be null or a fixture from [`lk_fixture_parse`], not yet freed.
void lk_fixture_free(struct LkFixture *fx);

// Canonical text of a fixture.
//
// # Safety
// `fx` must be a live fixture; `out` must be writable.
enum LkStatus lk_fixture_print(const struct LkFixture *fx, char **out);

// Locus of a fixture module as JSON. `locus` is one of `supp`, `free`,
// `cm`, `mcm`, `sn:N`, `tn:N`, `fid`, `gor`.
//
// # Safety
// `fx` must be a live fixture; strings NUL-terminated; `out` writable.
enum LkStatus lk_compute_locus_json(const struct LkFixture *fx,
                                    const char *module,
                                    const char *locus,
                                    char **out);

// Whether a fixture prime lies in a locus: writes 1 or 0 to `out`.
// Returns `LK_STATUS_INCONCLUSIVE` (leaving `out` untouched) when undecided.
//
// # Safety
// `fx` must be a live fixture; strings NUL-terminated; `out` writable.
enum LkStatus lk_member(const struct LkFixture *fx,
                        const char *module,
                        const char *locus,
                        const char *prime,
                        int32_t *out);

// Runs the checks of a fixture (all when `check` is null) and writes the
// JSON report and the exit code of the command-line tool (0 all as
// expected, 1 unexpected verdict, 2 inconclusive).
//
// # Safety
// `fx` must be a live fixture; `check` null or NUL-terminated; `out_json`
// and `out_exit` writable.
enum LkStatus lk_verify_json(const struct LkFixture *fx,
                             const char *check,
                             char **out_json,
                             int32_t *out_exit);

// Normal form of a polynomial expression in the comma-separated variables
// `vars`, printed canonically.
//
// # Safety
// Strings must be NUL-terminated; `out` writable.
enum LkStatus lk_poly_normalize(const char *vars, const char *expr, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOCIKIT_H */
