#ifndef FNR_FNR_H
#define FNR_FNR_H

/* C interface to the engine. Every function returning fnr_status leaves a
 * message for fnr_last_error() on failure. Strings handed out through
 * `char** out` parameters are owned by the caller and released with
 * fnr_string_free. */

#include <stddef.h>

#if defined(FNR_BUILDING_LIBRARY)
#define FNR_API __attribute__((visibility("default")))
#else
#define FNR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fnr_status {
  FNR_OK = 0,
  FNR_ERR_INVALID_ARGUMENT = 1,
  FNR_ERR_PARSE = 2,
  FNR_ERR_DEPTH_EXHAUSTED = 3,
  FNR_ERR_NOT_TOTAL_DERIVATIVE = 4,
  FNR_ERR_RESIDUAL_NONZERO = 5,
  FNR_ERR_ELIMINATION_FAILURE = 6,
  FNR_ERR_OUT_OF_MEMORY = 7,
  FNR_ERR_INTERNAL = 8
} fnr_status;

typedef enum fnr_format { FNR_FORMAT_TEXT = 0, FNR_FORMAT_LATEX = 1, FNR_FORMAT_JSON = 2 } fnr_format;

typedef struct fnr_psi fnr_psi;
typedef struct fnr_pde fnr_pde;
typedef struct fnr_report fnr_report;

FNR_API const char* fnr_version(void);
FNR_API const char* fnr_status_name(fnr_status status);
/* Message of the last failed call on this thread; empty if none. */
FNR_API const char* fnr_last_error(void);
FNR_API void fnr_string_free(char* s);

/* Constraint table rows 0..depth for time t_k; requires 1 <= k <= depth. */
FNR_API fnr_status fnr_psi_build(int k, int depth, fnr_psi** out);
FNR_API void fnr_psi_free(fnr_psi* psi);
FNR_API int fnr_psi_k(const fnr_psi* psi);
FNR_API int fnr_psi_depth(const fnr_psi* psi);
FNR_API fnr_status fnr_psi_render(const fnr_psi* psi, fnr_format format, char** out);
/* Lax matrix V^(n) of the table; 0 <= n <= depth. */
FNR_API fnr_status fnr_lax_render(const fnr_psi* psi, int n, fnr_format format, char** out);

/* t_n system on the t_k phase space, from zero curvature. */
FNR_API fnr_status fnr_pde_derive(const fnr_psi* psi, int n, fnr_pde** out);
/* The same system generated by the Hamiltonian H_k^(n) and the field brackets. */
FNR_API fnr_status fnr_pde_from_hamiltonian(const fnr_psi* psi, int n, fnr_pde** out);
/* Applies substitution rules ("lhs = rhs" lines, "const e" declarations) in place. */
FNR_API fnr_status fnr_pde_substitute(fnr_pde* pde, const char* rules);
FNR_API fnr_status fnr_pde_render(const fnr_pde* pde, fnr_format format, int zero_form, char** out);
FNR_API void fnr_pde_free(fnr_pde* pde);

FNR_API fnr_status fnr_hamiltonian_render(const fnr_psi* psi, int n, fnr_format format, char** out);
FNR_API fnr_status fnr_brackets_render(const fnr_psi* psi, fnr_format format, char** out);

/* Verification passes. A failed identity is reported, not returned as an error. */
FNR_API fnr_status fnr_verify_sklyanin(const fnr_psi* psi, fnr_report** out);
FNR_API fnr_status fnr_verify_duality(int n, int k, int depth, fnr_report** out);
FNR_API fnr_status fnr_verify_flow(const fnr_psi* psi, int n, fnr_report** out);
FNR_API fnr_status fnr_verify_strong_zc(const fnr_psi* psi, int n, int m, fnr_report** out);
FNR_API fnr_status fnr_verify_resolvent(const fnr_psi* psi, int depth, fnr_report** out);
/* Diagonal consistency and the squared-trace identity of the table. */
FNR_API fnr_status fnr_verify_diag(const fnr_psi* psi, fnr_report** out);

FNR_API int fnr_report_passed(const fnr_report* report);
FNR_API size_t fnr_report_failures(const fnr_report* report);
FNR_API fnr_status fnr_report_render(const fnr_report* report, fnr_format format, char** out);
FNR_API void fnr_report_free(fnr_report* report);

#ifdef __cplusplus
}
#endif

#endif
