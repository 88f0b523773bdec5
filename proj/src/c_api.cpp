#include "rsacount/rsacount.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "bias.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "lfunctions.hpp"
#include "primes.hpp"

struct rc_context {
    rsacount::SieveConfig sieve;
    rsacount::QuadratureConfig quadrature;
    rsacount::ErrorModel model = rsacount::ErrorModel::make(rsacount::ErrorModelKind::grh);
    std::uint64_t oracle_cap = 1'000'000;
    bool strict = false;
    std::string last_error;
    std::vector<std::string> warnings;
};

struct rc_character {
    rsacount::QuadraticCharacter chi;
};

namespace {

using rsacount::Rational;

rc_status status_of(rsacount::ErrorKind kind) {
    switch (kind) {
        case rsacount::ErrorKind::domain: return RC_ERR_DOMAIN;
        case rsacount::ErrorKind::range: return RC_ERR_RANGE;
        case rsacount::ErrorKind::resource: return RC_ERR_RESOURCE;
        case rsacount::ErrorKind::contract: return RC_ERR_CONTRACT;
        case rsacount::ErrorKind::validation: return RC_ERR_VALIDATION;
        case rsacount::ErrorKind::overflow: return RC_ERR_OVERFLOW;
    }
    return RC_ERR_INTERNAL;
}

// Runs fn with the context's error slots reset; exceptions become status codes.
template <class Fn>
rc_status guarded(rc_context* ctx, Fn&& fn) {
    if (!ctx) return RC_ERR_ARGUMENT;
    ctx->last_error.clear();
    ctx->warnings.clear();
    try {
        return fn();
    } catch (const rsacount::Error& e) {
        ctx->last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        ctx->last_error = "out of memory";
        return RC_ERR_RESOURCE;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return RC_ERR_INTERNAL;
    }
}

rc_status fail(rc_context* ctx, rc_status s, const char* msg) {
    ctx->last_error = msg;
    return s;
}

Rational to_rational(rc_rational r) { return Rational(r.num, r.den); }
rc_rational from_rational(const Rational& r) { return {r.num(), r.den()}; }

void copy_status(char (&dst)[256], const std::string& src) {
    const std::size_t n = std::min(src.size(), sizeof dst - 1);
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* rc_version(void) { return "1.0.0"; }

const char* rc_status_name(rc_status status) {
    switch (status) {
        case RC_OK: return "ok";
        case RC_ERR_DOMAIN: return "domain";
        case RC_ERR_RANGE: return "range";
        case RC_ERR_RESOURCE: return "resource";
        case RC_ERR_CONTRACT: return "contract";
        case RC_ERR_VALIDATION: return "validation";
        case RC_ERR_OVERFLOW: return "overflow";
        case RC_ERR_ARGUMENT: return "argument";
        case RC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

rc_status rc_context_create(rc_context** out) {
    if (!out) return RC_ERR_ARGUMENT;
    *out = new (std::nothrow) rc_context();
    return *out ? RC_OK : RC_ERR_RESOURCE;
}

void rc_context_destroy(rc_context* ctx) { delete ctx; }

const char* rc_last_error(const rc_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

size_t rc_warning_count(const rc_context* ctx) { return ctx ? ctx->warnings.size() : 0; }

const char* rc_warning(const rc_context* ctx, size_t index) {
    if (!ctx || index >= ctx->warnings.size()) return nullptr;
    return ctx->warnings[index].c_str();
}

rc_status rc_set_threads(rc_context* ctx, unsigned threads) {
    return guarded(ctx, [&] {
        if (threads == 0) return fail(ctx, RC_ERR_VALIDATION, "threads must be positive");
        ctx->sieve.threads = threads;
        return RC_OK;
    });
}

rc_status rc_set_sieve_segment(rc_context* ctx, uint64_t entries) {
    return guarded(ctx, [&] {
        if (entries == 0) return fail(ctx, RC_ERR_VALIDATION, "sieve segment must be positive");
        ctx->sieve.segment_entries = entries;
        return RC_OK;
    });
}

rc_status rc_set_oracle_cap(rc_context* ctx, uint64_t cap) {
    return guarded(ctx, [&] {
        if (cap == 0) return fail(ctx, RC_ERR_VALIDATION, "oracle cap must be positive");
        ctx->oracle_cap = cap;
        return RC_OK;
    });
}

rc_status rc_set_quadrature(rc_context* ctx, double abs_tol, double rel_tol, int max_depth) {
    return guarded(ctx, [&] {
        rsacount::QuadratureConfig q{abs_tol, rel_tol, max_depth};
        q.validate();
        ctx->quadrature = q;
        return RC_OK;
    });
}

rc_status rc_set_error_model(rc_context* ctx, const char* name, double c, double K) {
    return guarded(ctx, [&] {
        if (!name) return fail(ctx, RC_ERR_ARGUMENT, "null model name");
        const auto kind = rsacount::error_model_from_string(name);
        if (!kind) return fail(ctx, RC_ERR_VALIDATION, "unknown error model (valid: dlvp, kv, grh)");
        auto m = rsacount::ErrorModel::make(*kind, c);
        if (K > 0.0) m.K = K;
        ctx->model = m;
        return RC_OK;
    });
}

rc_status rc_set_strict(rc_context* ctx, int strict) {
    return guarded(ctx, [&] {
        ctx->strict = strict != 0;
        return RC_OK;
    });
}

rc_status rc_parse_rational(rc_context* ctx, const char* text, rc_rational* out) {
    return guarded(ctx, [&] {
        if (!text || !out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = from_rational(Rational::parse(text));
        return RC_OK;
    });
}

rc_status rc_r_from_s(rc_context* ctx, uint64_t x, rc_rational s, rc_rational* r_out) {
    return guarded(ctx, [&] {
        if (!r_out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *r_out = from_rational(rsacount::RsaQuery::from_s(x, to_rational(s)).r());
        return RC_OK;
    });
}

rc_status rc_count(rc_context* ctx, uint64_t x, rc_rational r, rc_count_result* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const rsacount::RsaQuery q(x, to_rational(r));
        const auto b = rsacount::count_rsa_exact(q, ctx->sieve);
        *out = {x, from_rational(q.r()), from_rational(q.s()), q.landau_regime() ? 1 : 0,
                b.sum_mid, b.sum_small, b.sum_sub, b.total};
        return RC_OK;
    });
}

rc_status rc_count_oracle(rc_context* ctx, uint64_t x, rc_rational r, uint64_t* total) {
    return guarded(ctx, [&] {
        if (!total) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *total = rsacount::count_rsa_oracle(rsacount::RsaQuery(x, to_rational(r)), ctx->oracle_cap);
        return RC_OK;
    });
}

rc_status rc_pi2(rc_context* ctx, uint64_t x, uint64_t* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::count_pi2(x, ctx->sieve);
        return RC_OK;
    });
}

rc_status rc_prime_count(rc_context* ctx, rc_rational y, uint64_t* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::prime_count(to_rational(y), ctx->sieve);
        return RC_OK;
    });
}

rc_status rc_count_classified(rc_context* ctx, const rc_character* chi, uint64_t x, rc_rational r,
                              rc_classified* out) {
    return guarded(ctx, [&] {
        if (!chi || !out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const auto c = rsacount::count_rsa_classified(rsacount::RsaQuery(x, to_rational(r)), chi->chi, ctx->sieve);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out->by_sign[i][j] = c.by_sign[i][j];
        out->coprime_total = c.coprime_total;
        out->raw_total = c.raw_total;
        return RC_OK;
    });
}

rc_status rc_main_term(rc_context* ctx, const char* approximant, double x, rc_rational r, double* out) {
    return guarded(ctx, [&] {
        if (!approximant || !out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const auto m = rsacount::approximant_from_string(approximant);
        if (!m) {
            std::string msg = "unknown approximant (valid:";
            for (auto a : rsacount::all_approximants()) msg += " " + std::string(rsacount::to_string(a));
            ctx->last_error = msg + ")";
            return RC_ERR_VALIDATION;
        }
        auto t = rsacount::main_term(*m, x, to_rational(r), ctx->quadrature, ctx->model, ctx->strict);
        *out = t.value;
        ctx->warnings = std::move(t.warnings);
        return RC_OK;
    });
}

size_t rc_approximant_count(void) { return rsacount::all_approximants().size(); }

const char* rc_approximant_name(size_t index) {
    const auto all = rsacount::all_approximants();
    return index < all.size() ? rsacount::to_string(all[index]).data() : nullptr;
}

rc_status rc_li(rc_context* ctx, double x, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::li(x, ctx->quadrature);
        return RC_OK;
    });
}

rc_status rc_loglog_diff(rc_context* ctx, double x, rc_rational r, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::loglog_diff(x, to_rational(r));
        return RC_OK;
    });
}

rc_status rc_g_r(rc_context* ctx, double x, double r, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::g_r(x, r, ctx->quadrature);
        return RC_OK;
    });
}

rc_status rc_g_r_alt(rc_context* ctx, double x, double r, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::g_r_alt(x, r, ctx->quadrature);
        return RC_OK;
    });
}

rc_status rc_delta(rc_context* ctx, double x, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::delta(ctx->model, x);
        return RC_OK;
    });
}

rc_status rc_big_delta(rc_context* ctx, double x, double* out) {
    return guarded(ctx, [&] {
        if (!out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = rsacount::big_delta(ctx->model, x, ctx->quadrature);
        return RC_OK;
    });
}

rc_status rc_character_parse(rc_context* ctx, const char* spec, rc_character** out) {
    return guarded(ctx, [&] {
        if (!spec || !out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *out = new rc_character{rsacount::QuadraticCharacter::parse(spec)};
        return RC_OK;
    });
}

void rc_character_destroy(rc_character* chi) { delete chi; }

uint64_t rc_character_modulus(const rc_character* chi) { return chi ? chi->chi.modulus() : 0; }

int rc_character_value(const rc_character* chi, uint64_t n) { return chi ? chi->chi(n) : 0; }

const char* rc_character_spec(const rc_character* chi) { return chi ? chi->chi.spec().c_str() : ""; }

rc_status rc_l_one(rc_context* ctx, const rc_character* chi, double* value, double* error) {
    return guarded(ctx, [&] {
        if (!chi || !value) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const auto e = rsacount::l_one(chi->chi);
        *value = e.value;
        if (error) *error = e.error;
        return RC_OK;
    });
}

rc_status rc_mertens(rc_context* ctx, const rc_character* chi, double* value, double* error) {
    return guarded(ctx, [&] {
        if (!chi || !value) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const auto m = rsacount::mertens_chi(chi->chi);
        *value = m.value;
        if (error) *error = m.error;
        return RC_OK;
    });
}

rc_status rc_l_chi_s(rc_context* ctx, const rc_character* chi, rc_rational s, rc_lchi_result* out) {
    return guarded(ctx, [&] {
        if (!chi || !out) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        const auto sr = to_rational(s);
        const auto b = rsacount::l_chi_s(chi->chi, sr);
        *out = {from_rational(b.s), b.head, b.tail, b.value, b.error,
                rsacount::l_chi_bound(sr, ctx->model, ctx->quadrature)};
        return RC_OK;
    });
}

rc_status rc_bias_table(rc_context* ctx, const rc_character* chi, int eta, const uint64_t* xs,
                        const rc_rational* ss, size_t n, rc_bias_row* rows) {
    return guarded(ctx, [&] {
        if (!chi || (n > 0 && (!xs || !ss || !rows))) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        if (eta != 1 && eta != -1) return fail(ctx, RC_ERR_VALIDATION, "eta must be +1 or -1");
        chi->chi.require_nonprincipal();
        std::vector<rsacount::GridPoint> grid;
        grid.reserve(n);
        for (size_t i = 0; i < n; ++i) grid.push_back({xs[i], to_rational(ss[i])});
        rsacount::BiasOptions opt;
        opt.sieve = ctx->sieve;
        opt.quadrature = ctx->quadrature;
        opt.model = ctx->model;
        opt.threads = ctx->sieve.threads;
        const auto reports = rsacount::bias_table(grid, chi->chi, eta, opt);
        bool flagged = false;
        for (size_t i = 0; i < n; ++i) {
            const auto& rep = reports[i];
            rc_bias_row& row = rows[i];
            row.x = rep.x;
            row.r = from_rational(rep.r);
            row.s = from_rational(rep.s);
            row.Q = rep.Q;
            row.eta = rep.eta;
            row.emp_num = rep.emp_num;
            row.emp_den = rep.emp_den;
            row.has_emp_ratio = rep.emp_ratio ? 1 : 0;
            row.emp_ratio = rep.emp_ratio.value_or(0.0);
            row.l_chi = rep.l_chi;
            row.h_main = rep.h_main;
            row.pred_ratio = rep.pred_ratio;
            row.delta_sqrt_x = rep.delta_sqrt_x;
            row.bigdelta_term = rep.bigdelta_term;
            row.loglog_term = rep.loglog_term;
            copy_status(row.status, rep.status);
            for (const auto& w : rep.warnings) ctx->warnings.push_back("row " + std::to_string(i) + ": " + w);
            flagged = flagged || !rep.warnings.empty();
        }
        if (ctx->strict && flagged) return fail(ctx, RC_ERR_RANGE, "bias grid point outside 2 <= r <= x/4");
        return RC_OK;
    });
}

rc_status rc_short_interval(rc_context* ctx, uint64_t x, uint64_t h, double* variance, double* envelope) {
    return guarded(ctx, [&] {
        if (!variance) return fail(ctx, RC_ERR_ARGUMENT, "null argument");
        *variance = rsacount::short_interval_variance(x, h, ctx->sieve);
        if (envelope) *envelope = rsacount::short_interval_envelope(x, h);
        return RC_OK;
    });
}

}  // extern "C"
