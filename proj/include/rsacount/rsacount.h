/* C interface to the rsacount library: exact RSA-integer counts, asymptotic
 * main terms, quadratic-character constants and congruence-bias reports.
 *
 * Every fallible call returns an rc_status. On failure the message is kept on
 * the context until the next call that takes the same context. Contexts are
 * not thread-safe; use one per thread. Character handles are immutable and
 * may be shared.
 */
#ifndef RSACOUNT_H
#define RSACOUNT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RSACOUNT_BUILDING)
#    define RC_API __declspec(dllexport)
#  else
#    define RC_API __declspec(dllimport)
#  endif
#else
#  define RC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rc_status {
    RC_OK = 0,
    RC_ERR_DOMAIN = 1,      /* input outside the mathematical domain */
    RC_ERR_RANGE = 2,       /* theorem hypothesis violated in strict mode */
    RC_ERR_RESOURCE = 3,    /* limit or memory budget exceeded */
    RC_ERR_CONTRACT = 4,    /* precondition violated, e.g. principal character */
    RC_ERR_VALIDATION = 5,  /* malformed input: spec strings, names, tables */
    RC_ERR_OVERFLOW = 6,    /* exact arithmetic does not fit in 64 bits */
    RC_ERR_ARGUMENT = 7,    /* null pointer or bad handle */
    RC_ERR_INTERNAL = 8
} rc_status;

typedef struct rc_context rc_context;
typedef struct rc_character rc_character;

typedef struct rc_rational {
    int64_t num;
    int64_t den; /* > 0 */
} rc_rational;

RC_API const char* rc_version(void);
RC_API const char* rc_status_name(rc_status status);

/* ---- context ---- */

RC_API rc_status rc_context_create(rc_context** out);
RC_API void rc_context_destroy(rc_context* ctx);
/* Message of the last failure, "" if the last call succeeded. */
RC_API const char* rc_last_error(const rc_context* ctx);
/* Warnings (violated hypotheses, boundary notes) produced by the last call. */
RC_API size_t rc_warning_count(const rc_context* ctx);
RC_API const char* rc_warning(const rc_context* ctx, size_t index);

RC_API rc_status rc_set_threads(rc_context* ctx, unsigned threads);
RC_API rc_status rc_set_sieve_segment(rc_context* ctx, uint64_t entries);
RC_API rc_status rc_set_oracle_cap(rc_context* ctx, uint64_t cap);
RC_API rc_status rc_set_quadrature(rc_context* ctx, double abs_tol, double rel_tol, int max_depth);
/* name: dlvp, kv or grh. K <= 0 selects the model's default K. */
RC_API rc_status rc_set_error_model(rc_context* ctx, const char* name, double c, double K);
RC_API rc_status rc_set_strict(rc_context* ctx, int strict);

/* ---- exact values ---- */

/* Parses "a", "a/b", decimals and integral scientific notation. */
RC_API rc_status rc_parse_rational(rc_context* ctx, const char* text, rc_rational* out);
/* r = x / s, reduced. */
RC_API rc_status rc_r_from_s(rc_context* ctx, uint64_t x, rc_rational s, rc_rational* r_out);

/* ---- counting ---- */

typedef struct rc_count_result {
    uint64_t x;
    rc_rational r;
    rc_rational s;
    int landau_regime; /* r >= x/4 */
    uint64_t sum_mid;
    uint64_t sum_small;
    uint64_t sum_sub;
    uint64_t total;
} rc_count_result;

RC_API rc_status rc_count(rc_context* ctx, uint64_t x, rc_rational r, rc_count_result* out);
/* Brute-force double loop; fails with RC_ERR_RESOURCE above the oracle cap. */
RC_API rc_status rc_count_oracle(rc_context* ctx, uint64_t x, rc_rational r, uint64_t* total);
RC_API rc_status rc_pi2(rc_context* ctx, uint64_t x, uint64_t* out);
RC_API rc_status rc_prime_count(rc_context* ctx, rc_rational y, uint64_t* out);

typedef struct rc_classified {
    uint64_t by_sign[2][2]; /* [chi(p)][chi(q)], index 0 is +1 and 1 is -1 */
    uint64_t coprime_total;
    uint64_t raw_total;
} rc_classified;

RC_API rc_status rc_count_classified(rc_context* ctx, const rc_character* chi, uint64_t x, rc_rational r,
                                     rc_classified* out);

/* ---- asymptotics ---- */

/* Names: landau, decker_moree, justus, f_r, g_r, thm_large_int, thm_large,
 * thm_small, uniform. Hypothesis violations are warnings unless strict. */
RC_API rc_status rc_main_term(rc_context* ctx, const char* approximant, double x, rc_rational r, double* out);
RC_API size_t rc_approximant_count(void);
RC_API const char* rc_approximant_name(size_t index);

RC_API rc_status rc_li(rc_context* ctx, double x, double* out);
RC_API rc_status rc_loglog_diff(rc_context* ctx, double x, rc_rational r, double* out);
RC_API rc_status rc_g_r(rc_context* ctx, double x, double r, double* out);
RC_API rc_status rc_g_r_alt(rc_context* ctx, double x, double r, double* out);
/* delta(x) and Delta(x) of the context's error model. */
RC_API rc_status rc_delta(rc_context* ctx, double x, double* out);
RC_API rc_status rc_big_delta(rc_context* ctx, double x, double* out);

/* ---- characters ---- */

/* "kronecker:D" for a fundamental discriminant D, or "table:Q:v0,v1,...". */
RC_API rc_status rc_character_parse(rc_context* ctx, const char* spec, rc_character** out);
RC_API void rc_character_destroy(rc_character* chi);
RC_API uint64_t rc_character_modulus(const rc_character* chi);
RC_API int rc_character_value(const rc_character* chi, uint64_t n);
/* Canonical spec string; valid for the handle's lifetime. */
RC_API const char* rc_character_spec(const rc_character* chi);

RC_API rc_status rc_l_one(rc_context* ctx, const rc_character* chi, double* value, double* error);
RC_API rc_status rc_mertens(rc_context* ctx, const rc_character* chi, double* value, double* error);

typedef struct rc_lchi_result {
    rc_rational s;
    double head;
    double tail;
    double value;
    double error;
    double bound; /* Delta(sqrt s)/log s under the context's error model */
} rc_lchi_result;

RC_API rc_status rc_l_chi_s(rc_context* ctx, const rc_character* chi, rc_rational s, rc_lchi_result* out);

/* ---- bias ---- */

typedef struct rc_bias_row {
    uint64_t x;
    rc_rational r;
    rc_rational s;
    uint64_t Q;
    int eta;
    uint64_t emp_num;
    uint64_t emp_den;
    int has_emp_ratio; /* 0 when emp_den == 0 */
    double emp_ratio;
    double l_chi;
    double h_main;
    double pred_ratio;
    double delta_sqrt_x;
    double bigdelta_term;
    double loglog_term;
    char status[256]; /* ok, undefined_ratio, or "error: ..." */
} rc_bias_row;

/* One row per (xs[i], ss[i]) point in input order; failures are per row.
 * In strict mode a row with warnings makes the call return RC_ERR_RANGE
 * after all rows are filled. */
RC_API rc_status rc_bias_table(rc_context* ctx, const rc_character* chi, int eta, const uint64_t* xs,
                               const rc_rational* ss, size_t n, rc_bias_row* rows);

/* ---- short intervals ---- */

RC_API rc_status rc_short_interval(rc_context* ctx, uint64_t x, uint64_t h, double* variance, double* envelope);

#ifdef __cplusplus
}
#endif

#endif /* RSACOUNT_H */
