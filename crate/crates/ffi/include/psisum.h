#ifndef PSISUM_H
#define PSISUM_H

#include <stddef.h>
#include <stdint.h>

#define PSISUM_BESSEL_J 0

#define PSISUM_BESSEL_Y 1

#define PSISUM_BESSEL_I 2

#define PSISUM_BESSEL_K 3

#define PSISUM_TARGET_ALPHA 0

#define PSISUM_TARGET_BETA 1

/*
 Outcome of a call.
 */
typedef enum {
  PSISUM_STATUS_OK = 0,
  /*
   A required pointer was null.
   */
  PSISUM_STATUS_NULL_POINTER = 1,
  /*
   An argument was malformed: bad enum value, bad UTF-8, unknown name.
   */
  PSISUM_STATUS_INVALID_ARGUMENT = 2,
  /*
   The point lies outside the function's domain.
   */
  PSISUM_STATUS_DOMAIN = 3,
  /*
   The point is a pole.
   */
  PSISUM_STATUS_POLE = 4,
  /*
   A series did not converge within its term budget.
   */
  PSISUM_STATUS_NON_CONVERGENCE = 5,
  /*
   Adaptive quadrature hit its subdivision limit.
   */
  PSISUM_STATUS_QUADRATURE = 6,
  /*
   Meijer-G shape outside the supported set.
   */
  PSISUM_STATUS_UNSUPPORTED_SHAPE = 7,
  /*
   The library panicked; this is a bug.
   */
  PSISUM_STATUS_INTERNAL = 8,
} PsisumStatus;

/*
 Opaque suite report.
 */
typedef struct PsisumReport PsisumReport;

/*
 A complex number.
 */
typedef struct {
  double re;
  double im;
} PsisumComplex;

/*
 Result of checking one identity at one point.
 */
typedef struct {
  PsisumComplex lhs;
  PsisumComplex rhs;
  double abs_err;
  double rel_err;
  double tol;
  /*
   1 when rel_err <= tol, else 0.
   */
  int32_t pass;
  size_t lhs_terms;
  size_t rhs_terms;
} PsisumCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version, a static string.
 */
const char *psisum_version(void);

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next call on this thread.
 */
const char *psisum_last_error_message(void);

/*
 Gamma(z).

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_gamma(PsisumComplex z, PsisumComplex *out);

/*
 psi(z).

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_digamma(PsisumComplex z, PsisumComplex *out);

/*
 B_z(a, b).

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_inc_beta(PsisumComplex z, PsisumComplex a, PsisumComplex b, PsisumComplex *out);

/*
 pFq(a; b; z) with `p` numerator and `q` denominator parameters.

 # Safety
 `a` and `b` must be valid for `p` and `q` reads; `out` must be valid for writes.
 */
PsisumStatus psisum_pfq(const PsisumComplex *a,
                        size_t p,
                        const PsisumComplex *b,
                        size_t q,
                        PsisumComplex z,
                        double tol,
                        PsisumComplex *out);

/*
 G^{m,n}_{p,q}(x | a; b) for the supported shapes.

 # Safety
 `a` and `b` must be valid for `p` and `q` reads; `out` must be valid for writes.
 */
PsisumStatus psisum_meijer_g(size_t m,
                             size_t n,
                             const double *a,
                             size_t p,
                             const double *b,
                             size_t q,
                             double x,
                             double *out);

/*
 Bessel function of kind `PSISUM_BESSEL_*`.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_bessel(int32_t kind, double nu, double x, double *out);

/*
 Order derivative of J (`PSISUM_BESSEL_J`) or I (`PSISUM_BESSEL_I`):
 the Meijer-G closed form when `closed` is nonzero, else the digamma series.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_bessel_dnu(int32_t kind, double nu, double x, int32_t closed, double *out);

/*
 W_{alpha,beta}(z).

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_wright(double alpha, double beta, PsisumComplex z, PsisumComplex *out);

/*
 Derivative of W_{alpha,beta}(z) with respect to `PSISUM_TARGET_*`, by series.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_wright_deriv(int32_t which,
                                 double alpha,
                                 double beta,
                                 PsisumComplex z,
                                 PsisumComplex *out);

/*
 E_{alpha,beta}(z).

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_mittag_leffler(double alpha, double beta, PsisumComplex z, PsisumComplex *out);

/*
 Derivative of E_{alpha,beta}(z) with respect to `PSISUM_TARGET_*`, by series.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_ml_deriv(int32_t which,
                             double alpha,
                             double beta,
                             PsisumComplex z,
                             PsisumComplex *out);

/*
 Closed form of the Mittag-Leffler derivative at integer alpha = n.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_ml_deriv_int_alpha(int32_t which,
                                       uint32_t n,
                                       double beta,
                                       PsisumComplex z,
                                       PsisumComplex *out);

/*
 Q(a, t) = sum t^k psi(k+a)/(a)_k, closed form.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_q_func(PsisumComplex a, PsisumComplex t, PsisumComplex *out);

/*
 P(a, t) = dQ(a, t)/dt, closed form.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_p_func(PsisumComplex a, PsisumComplex t, PsisumComplex *out);

/*
 (1/n) sum_{m=1}^{n} exp(2 pi i m k / n), n >= 1.

 # Safety
 `out` must be valid for writes.
 */
PsisumStatus psisum_theta_filter(uint64_t n, uint64_t k, PsisumComplex *out);

/*
 Number of registered identities.
 */
size_t psisum_identity_count(void);

/*
 Name of identity `index`, a static string, or null when out of range.
 */
const char *psisum_identity_name(size_t index);

/*
 Checks identity `name` at `params`, written as in a grid file: `b=1.4 c=2.6 z=0.3+0.1i`.

 An evaluation error returns its status and leaves `out` untouched.

 # Safety
 `name` and `params` must be nul-terminated strings; `out` must be valid for writes.
 */
PsisumStatus psisum_check_identity(const char *name,
                                   const char *params,
                                   double tol,
                                   PsisumCheck *out);

/*
 Runs suite `suite` (`beta`, `hyper`, `bessel`, `wright`, `mittag-leffler` or `all`).

 `tol_override` replaces every tolerance when positive. `grid` is null for
 the default grids, or the text of a grid file. `jobs` is the worker count.

 # Safety
 `suite` must be a nul-terminated string; `grid` null or nul-terminated;
 `out` valid for writes. Release the report with [`psisum_report_free`].
 */
PsisumStatus psisum_report_run(const char *suite,
                               double tol_override,
                               const char *grid,
                               size_t jobs,
                               PsisumReport **out);

/*
 Number of rows in a report; 0 for null.

 # Safety
 `report` must be null or a live handle.
 */
size_t psisum_report_count(const PsisumReport *report);

/*
 Row tallies of a report. Any of the out-pointers may be null.

 # Safety
 `report` must be a live handle; non-null out-pointers must be valid for writes.
 */
PsisumStatus psisum_report_summary(const PsisumReport *report,
                                   size_t *pass,
                                   size_t *fail,
                                   size_t *error);

/*
 The report as JSON. With `canonical` nonzero the timestamp and runtimes are
 omitted, so equal inputs give equal strings. Release with [`psisum_string_free`].

 # Safety
 `report` must be a live handle; `out` valid for writes.
 */
PsisumStatus psisum_report_to_json(const PsisumReport *report, int32_t canonical, char **out);

/*
 The report as CSV. Release with [`psisum_string_free`].

 # Safety
 `report` must be a live handle; `out` valid for writes.
 */
PsisumStatus psisum_report_to_csv(const PsisumReport *report, char **out);

/*
 Releases a report. Null is ignored.

 # Safety
 `report` must be null or a handle from [`psisum_report_run`] not yet freed.
 */
void psisum_report_free(PsisumReport *report);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void psisum_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSISUM_H */
