#ifndef SCHUR_TWIST_H
#define SCHUR_TWIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_PARSE_ERROR = 3,
  ST_STATUS_LIBRARY_ERROR = 4,
  ST_STATUS_PANIC = 5,
} StStatus;

// Opaque classification data.
typedef struct StClass StClass;

// Opaque (phi, N, Gal)-module over E^f.
typedef struct StModule StModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next call into this library from the same thread.
const char *st_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void st_string_free(char *s);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum StStatus st_class_from_json(const char *json, struct StClass **out);

// # Safety
// `c` must be NULL or a handle from this library that has not been freed.
void st_class_free(struct StClass *c);

// # Safety
// `c` must be a live handle; `out` must be writable.
enum StStatus st_class_to_json(const struct StClass *c, char **out);

// Rank of the class.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum StStatus st_class_rank(const struct StClass *c, size_t *out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum StStatus st_class_tensor(const struct StClass *a,
                              const struct StClass *b,
                              struct StClass **out);

// `shape` is a comma-separated partition such as "2,1".
//
// # Safety
// `a` must be a live handle, `shape` a NUL-terminated string, `out` writable.
enum StStatus st_class_schur(const struct StClass *a, const char *shape, struct StClass **out);

// Hodge-Tate test for a class of Hodge-Tate flavor.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum StStatus st_class_is_hodge_tate(const struct StClass *a, bool *out);

// de Rham test for a class of de Rham flavor.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum StStatus st_class_is_de_rham(const struct StClass *a, bool *out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum StStatus st_module_from_json(const char *json, struct StModule **out);

// # Safety
// `m` must be NULL or a handle from this library that has not been freed.
void st_module_free(struct StModule *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum StStatus st_module_to_json(const struct StModule *m, char **out);

// Checks the module relations. `valid` receives the verdict; when `report`
// is not NULL it receives a JSON array of failed relations.
//
// # Safety
// `m` must be a live handle; `valid` must be writable; `report` may be NULL.
enum StStatus st_module_validate(const struct StModule *m, bool *valid, char **report);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum StStatus st_module_is_semistable(const struct StModule *m, bool *out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum StStatus st_module_is_crystalline(const struct StModule *m, bool *out);

// Runs the tensor twist pipeline on two modules and writes a JSON report.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum StStatus st_module_twist_tensor(const struct StModule *a,
                                     const struct StModule *b,
                                     char **out);

// Runs the Schur twist pipeline and writes a JSON report.
//
// # Safety
// `m` must be a live handle, `shape` a NUL-terminated string, `out` writable.
enum StStatus st_module_twist_schur(const struct StModule *m, const char *shape, char **out);

// Matrix of Schur^shape applied to a square matrix given as JSON.
//
// # Safety
// `shape` and `matrix` must be NUL-terminated strings; `out` must be writable.
enum StStatus st_schur_matrix(const char *shape, const char *matrix, char **out);

// Tensor twist solver on two weight systems given as JSON.
//
// # Safety
// Arguments must be NUL-terminated strings; `out` must be writable.
enum StStatus st_tensor_twist_solve(const char *w1, const char *w2, char **out);

// Schur twist solver on a weight system given as JSON.
//
// # Safety
// Arguments must be NUL-terminated strings; `out` must be writable.
enum StStatus st_schur_twist_solve(const char *w, const char *shape, char **out);

// Runs the command-line front end with `argv[0..argc]` (excluding the
// program name). The JSON report goes to `report` (possibly "null" for
// usage errors) and the exit code to `code`.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; outputs must be writable.
enum StStatus st_run(const char *const *argv, int argc, char **report, int *code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUR_TWIST_H */
