#ifndef FANOKIT_H
#define FANOKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FkStatus {
  FK_STATUS_OK = 0,
  FK_STATUS_NULL_POINTER = 1,
  FK_STATUS_INVALID_UTF8 = 2,
  FK_STATUS_INVALID_ARGUMENT = 3,
  FK_STATUS_INVALID_WEIGHT = 4,
  FK_STATUS_NO_MATCH = 5,
  FK_STATUS_OVERFLOW = 6,
  FK_STATUS_JSON = 7,
  FK_STATUS_PANIC = 99,
} FkStatus;

// Opaque alternating form on Q^n.
typedef struct FkAltForm FkAltForm;

// Cohomology of a homogeneous bundle. `dim` is only meaningful when
// `vanishing` is 0.
typedef struct FkBottResult {
  int32_t vanishing;
  size_t degree;
  uint64_t dim;
} FkBottResult;

// Orbit invariants. `name` is NUL-terminated.
typedef struct FkOrbit {
  char name[8];
  size_t orbit_dim;
  size_t two_rank;
  size_t q_rank;
} FkOrbit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or NULL. Valid until the next call.
const char *fk_last_error(void);

// Library version as a static string.
const char *fk_version(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void fk_string_free(char *s);

// Cohomology of Σ^quotient Q ⊗ Σ^sub S on Gr(m, n). `quotient` has n - m
// entries (NULL means zero) and `sub` has m.
//
// # Safety
// Pointers must be valid for their lengths; `out` must be writable.
enum FkStatus fk_bott(size_t m,
                      size_t n,
                      const int64_t *quotient,
                      const int64_t *sub,
                      struct FkBottResult *out);

// Hodge number h^{p,q} of a smooth degree-d hypersurface in P^n, p + q = n - 1.
//
// # Safety
// `out` must be writable.
enum FkStatus fk_hypersurface_hodge(size_t n, size_t d, size_t p, size_t q, uint64_t *out);

// Parses a form from its JSON term list.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum FkStatus fk_alt_form_from_json(const char *json, size_t space_dim, struct FkAltForm **out);

// The 4-form α₄ on Q^7.
//
// # Safety
// `out` must be writable.
enum FkStatus fk_alt_form_alpha4(struct FkAltForm **out);

// Degree of the form, or 0 for NULL.
//
// # Safety
// `form` must be NULL or a live handle.
size_t fk_alt_form_degree(const struct FkAltForm *form);

// JSON term list of the form; release with [`fk_string_free`].
//
// # Safety
// `form` must be a live handle and `out` writable.
enum FkStatus fk_alt_form_to_json(const struct FkAltForm *form, char **out);

// Orbit of a 3- or 4-form on Q^7.
//
// # Safety
// `form` must be a live handle and `out` writable.
enum FkStatus fk_alt_form_classify(const struct FkAltForm *form, struct FkOrbit *out);

// # Safety
// `form` must be NULL or a handle not yet freed.
void fk_alt_form_free(struct FkAltForm *form);

// Rank over F_prime of a skew matrix given row-major.
//
// # Safety
// `entries` must hold size*size values and `out` be writable.
enum FkStatus fk_skew_rank(uint64_t prime, size_t size, const uint64_t *entries, size_t *out);

// Pfaffian over F_prime of an even-size skew matrix given row-major.
//
// # Safety
// `entries` must hold size*size values and `out` be writable.
enum FkStatus fk_pfaffian(uint64_t prime, size_t size, const uint64_t *entries, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FANOKIT_H */
