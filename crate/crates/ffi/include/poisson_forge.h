#ifndef POISSON_FORGE_H
#define POISSON_FORGE_H

#include <stdbool.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum PfStatus {
  PF_STATUS_OK = 0,
  PF_STATUS_NULL_ARGUMENT = 1,
  PF_STATUS_INVALID_UTF8 = 2,
  PF_STATUS_SYNTAX = 3,
  PF_STATUS_GRADE = 4,
  PF_STATUS_NOT_INVARIANT = 5,
  PF_STATUS_NOT_REAL = 6,
  PF_STATUS_INVALID_INPUT = 7,
  PF_STATUS_INTERNAL = 8,
} PfStatus;

/**
 * A ℂ*-invariant holomorphic bivector on ℂ⁴.
 */
typedef struct PfBivector PfBivector;

typedef struct PfCp3Verdict {
  bool poisson;
  bool nontrivial;
  bool bracket_zero_on_c4;
} PfCp3Verdict;

typedef struct PfHp1Verdict {
  bool poisson;
  bool phi_fixed;
  bool cp3_poisson;
  bool nontrivial;
} PfHp1Verdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pf_last_error(void);

/**
 * Parses a bivector such as `"z0*z1*d2/\d3"`.
 *
 * # Safety
 * `src` must be null or a nul-terminated string; `out` must be null or
 * point to writable storage for a handle.
 */
enum PfStatus pf_bivector_parse(const char *src, struct PfBivector **out);

/**
 * Reads a bivector from its coefficient-tensor JSON.
 *
 * # Safety
 * As for [`pf_bivector_parse`].
 */
enum PfStatus pf_bivector_from_json(const char *json, struct PfBivector **out);

/**
 * Builds the bivector of a degree-3 one-form such as `"z1^3*dz0 - z0*z1^2*dz1"`.
 *
 * # Safety
 * As for [`pf_bivector_parse`].
 */
enum PfStatus pf_bivector_from_form(const char *form, struct PfBivector **out);

/**
 * Builds the bivector of the pencil spanned by two quadrics `f`, `g`.
 *
 * # Safety
 * As for [`pf_bivector_parse`].
 */
enum PfStatus pf_bivector_from_pencil(const char *f, const char *g, struct PfBivector **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `b` must be null or a handle returned by this library and not yet freed.
 */
void pf_bivector_free(struct PfBivector *b);

/**
 * Renders the bivector; release the string with [`pf_string_free`].
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be null or writable.
 */
enum PfStatus pf_bivector_render(const struct PfBivector *b, char **out);

/**
 * Renders the coefficient-tensor JSON; release with [`pf_string_free`].
 *
 * # Safety
 * As for [`pf_bivector_render`].
 */
enum PfStatus pf_bivector_to_json(const struct PfBivector *b, char **out);

/**
 * Renders the Schouten bracket `[a, b]`; release with [`pf_string_free`].
 *
 * # Safety
 * `a`, `b` must be live handles or null; `out` must be null or writable.
 */
enum PfStatus pf_bracket(const struct PfBivector *a, const struct PfBivector *b, char **out);

/**
 * Poisson test on complex projective 3-space.
 *
 * # Safety
 * `b` must be a live handle or null; `out` must be null or writable.
 */
enum PfStatus pf_check_cp3(const struct PfBivector *b, struct PfCp3Verdict *out);

/**
 * Poisson test on the quaternionic projective line.
 *
 * # Safety
 * As for [`pf_check_cp3`].
 */
enum PfStatus pf_check_hp1(const struct PfBivector *b, struct PfHp1Verdict *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void pf_string_free(char *s);

/**
 * Library version as a static nul-terminated string.
 */
const char *pf_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_FORGE_H */
