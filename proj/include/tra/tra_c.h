#ifndef TRA_C_H
#define TRA_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(TRA_BUILDING_LIBRARY)
#define TRA_API __attribute__((visibility("default")))
#else
#define TRA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. 1..20 mirror the library's error kinds. */
enum tra_status {
  TRA_OK = 0,
  TRA_INVALID_ARGUMENT = 1,
  TRA_ZERO_OFF_DIAGONAL = 2,
  TRA_INVALID_FAMILY_PARAMS = 3,
  TRA_NO_CLOSED_FORM = 4,
  TRA_NUMERICAL_OVERFLOW = 5,
  TRA_INDEX_OUT_OF_VALIDITY = 6,
  TRA_DOMAIN_ERROR = 7,
  TRA_REALITY_VIOLATION = 8,
  TRA_SCENARIO_REQUIRES_A1_ZERO = 9,
  TRA_SCENARIO_MISMATCH = 10,
  TRA_DEGENERATE_DENOMINATOR = 11,
  TRA_NO_FAMILY_APPLIES = 12,
  TRA_AMBIGUOUS_REGION = 13,
  TRA_INDEX_OUT_OF_SPECTRUM = 14,
  TRA_TRUNCATION_TOO_SMALL = 15,
  TRA_SINGULAR_POINT_TOO_CLOSE = 16,
  TRA_NO_BOUND_STATES = 17,
  TRA_NO_CONTINUUM = 18,
  TRA_BELOW_THRESHOLD = 19,
  TRA_MESH_TOO_COARSE = 20,
  TRA_NULL_POINTER = 21,
  TRA_BUFFER_TOO_SMALL = 22,
  TRA_UNKNOWN_ERROR = 23
};

TRA_API const char* tra_status_name(int status);
/* Message of the last failure on the calling thread ("" if none). */
TRA_API const char* tra_last_error(void);

/* ---- potential cases ---- */

typedef struct tra_case tra_case;

/* name: coulomb, oscillator, morse, poschl_teller, scarf, eckart (case-insensitive). */
TRA_API int tra_case_new(const char* name, tra_case** out);
TRA_API void tra_case_free(tra_case* pc);
TRA_API int tra_case_name(const tra_case* pc, const char** name);
/* keys: lambda, L (Scarf, sets lambda = pi / L), Z, omega, V1, V2, A, B, ell */
TRA_API int tra_case_set(tra_case* pc, const char* key, double value);
TRA_API int tra_case_get(const tra_case* pc, const char* key, double* value);
TRA_API int tra_case_validate(const tra_case* pc);

/* energies receives up to capacity levels; count the number produced. */
TRA_API int tra_bound_spectrum(const tra_case* pc, unsigned m_max, int coulomb_as_printed,
                               double* energies, size_t capacity, size_t* count,
                               int* infinite);
/* threshold is NaN when the case has no continuum. */
TRA_API int tra_continuum_threshold(const tra_case* pc, double* threshold);
TRA_API int tra_phase_shift(const tra_case* pc, double energy, double* delta);

/* Lowest levels of the finite-difference Hamiltonian. A zero h selects the default mesh. */
TRA_API int tra_fd_oracle(const tra_case* pc, double r_lo, double r_hi, double h,
                          unsigned levels, double* energies);

/* ---- ODE parameters and family matching ---- */

enum tra_equation { TRA_LAGUERRE = 0, TRA_JACOBI = 1 };
enum tra_branch { TRA_PLUS = 0, TRA_MINUS = 1 };

typedef struct {
  int equation;
  double a;
  double b;
  double A_plus;
  double A_minus;
  double A_zero;
  double A_one;
} tra_ode_params;

TRA_API int tra_case_ode_params(const tra_case* pc, double energy, tra_ode_params* out);
/* Scenario and basis branches the case solutions use. */
TRA_API int tra_case_basis(const tra_case* pc, const char** scenario, int* mu_sign, int* nu_sign,
                           double* free_index);

typedef struct tra_match tra_match;

typedef struct {
  const char* family;
  const char* form;
  const char* scenario;
  const char* spectrum_kind;
  unsigned spectrum_size;
  int formal;
  double tra_variable;
  double family_variable;
  double map_scale;
  double map_offset;
  double alpha;
  double beta;
  double mu;
  double nu;
  size_t param_count;
} tra_match_info;

/* scenario: A7a, A7b, B12a, B12b, B12c. A NaN free_index keeps the default. */
TRA_API int tra_match_new(const tra_ode_params* params, const char* scenario, int mu_sign,
                          int nu_sign, double free_index, tra_match** out);
/* Same, with the family forced by name. */
TRA_API int tra_match_as(const tra_ode_params* params, const char* scenario, const char* family,
                         int mu_sign, int nu_sign, double free_index, tra_match** out);
TRA_API void tra_match_free(tra_match* match);
TRA_API int tra_match_get_info(const tra_match* match, tra_match_info* info);
/* i-th family parameter; im is 0 except for complex Wilson parameters. */
TRA_API int tra_match_param(const tra_match* match, size_t i, const char** name, double* re,
                            double* im);

/* ---- polynomial families ---- */

typedef struct tra_family tra_family;

/* name: meixner_pollaczek, meixner, krawtchouk, continuous_dual_hahn, dual_hahn, wilson,
   racah, newh, newg. Keys per family: mu theta | mu tau | N tau | tau a b | N gamma delta |
   a b c d (with a_im ...) | N alpha beta delta | mu nu theta sigma z | mu nu tau sigma z.
   For Meixner-Pollaczek and Meixner the key nu sets mu = (nu + 1) / 2. */
TRA_API int tra_family_new(const char* name, const char* const* keys, const double* values,
                           size_t count, tra_family** out);
TRA_API void tra_family_free(tra_family* family);
TRA_API int tra_family_name(const tra_family* family, const char** name);
/* P_0..P_{n_max} at the natural argument by the three-term recursion. */
TRA_API int tra_family_values(const tra_family* family, double arg, unsigned n_max,
                              double* values);
TRA_API int tra_family_closed_form(const tra_family* family, unsigned n, double arg,
                                   double* value);

/* ---- series solutions of the physics cases ---- */

typedef struct tra_wavefunction tra_wavefunction;

typedef struct {
  double energy;
  const char* family;
  size_t truncation;
  double tail_ratio;
  double argument;
} tra_wavefunction_info;

/* A NaN free_index keeps the default; check_tail != 0 rejects slowly decaying series. */
TRA_API int tra_wavefunction_bound(const tra_case* pc, unsigned m, size_t truncation,
                                   int check_tail, double free_index, tra_wavefunction** out);
TRA_API int tra_wavefunction_scattering(const tra_case* pc, double energy, size_t truncation,
                                        int check_tail, double free_index,
                                        tra_wavefunction** out);
TRA_API void tra_wavefunction_free(tra_wavefunction* wf);
TRA_API int tra_wavefunction_eval(const tra_wavefunction* wf, double r, double* psi);
TRA_API int tra_wavefunction_get_info(const tra_wavefunction* wf, tra_wavefunction_info* info);
/* Largest ODE residual over the radial points. */
TRA_API int tra_wavefunction_residual(const tra_wavefunction* wf, const double* r, size_t count,
                                      double* residual);

/* ---- property reports ---- */

typedef struct tra_report tra_report;

typedef struct {
  const char* suite;
  const char* name;
  double value;
  double tolerance;
  int pass;
  const char* detail;
} tra_check_row;

/* suite: polynomials, weights, tra, physics, residual, newh, all. */
TRA_API int tra_verify_run(const char* suite, uint64_t seed, unsigned draws, tra_report** out);
TRA_API void tra_report_free(tra_report* report);
TRA_API size_t tra_report_count(const tra_report* report);
TRA_API int tra_report_row(const tra_report* report, size_t i, tra_check_row* row);

#ifdef __cplusplus
}
#endif

#endif
