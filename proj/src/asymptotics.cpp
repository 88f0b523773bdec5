#include "asymptotics.hpp"

#include <array>
#include <cmath>

#include "errors.hpp"

namespace rsacount {

namespace {

constexpr double kLog2 = 0.69314718055994530942;
constexpr double kSeriesSwitch = 1e-4;

// Integral over [log lo, log hi] of e^t w(t) dt, i.e. of w(log u) du over [lo, hi].
template <class W>
double integrate_log_scale(W&& weight, double lo, double hi, const QuadratureConfig& cfg) {
    if (hi <= lo) return 0.0;
    auto f = [&](double t) { return std::exp(t) * weight(t); };
    return adaptive_simpson(f, std::log(lo), std::log(hi), cfg);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " is not finite");
}

// delta as a function of t = log x.
double delta_of_log(const ErrorModel& m, double t) {
    switch (m.kind) {
        case ErrorModelKind::dlvp:
            return std::exp(-m.c * std::sqrt(t));
        case ErrorModelKind::kv: {
            // log log(x + 4) = log(t + log1p(4/x)); stays finite for huge x
            const double llx4 = std::log(t + std::log1p(4.0 * std::exp(-t)));
            return std::exp(-m.c * std::pow(t, 0.6) / std::pow(llx4, 0.2));
        }
        case ErrorModelKind::grh:
            return std::exp(-0.5 * t) * t * t;
    }
    return 0.0;
}

// Integral over [T, inf) of exp(-c sqrt(t)) dt.
double root_exp_tail(double c, double t) {
    const double s = std::sqrt(t);
    return 2.0 * std::exp(-c * s) * (s / c + 1.0 / (c * c));
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ValidationError("quadrature tolerances must be positive");
    if (max_depth < 10) throw ValidationError("quadrature max_depth must be >= 10");
}

double li(double x, const QuadratureConfig& cfg) {
    if (!(x >= 2.0)) throw DomainError("Li(x) needs x >= 2");
    if (x == 2.0) return 0.0;
    return adaptive_simpson([](double t) { return std::exp(t) / t; }, kLog2, std::log(x), cfg);
}

double li2(double x, const QuadratureConfig& cfg) {
    if (!(x >= 2.0)) throw DomainError("Li2(x) needs x >= 2");
    if (x == 2.0) return 0.0;
    return adaptive_simpson([](double t) { return std::exp(t) / (t * t); }, kLog2, std::log(x), cfg);
}

namespace {

// Li at interior quadrature nodes, where exp(log y) may land an ulp below 2.
double li_node(double y, const QuadratureConfig& cfg) { return y < 2.0 && y > 2.0 - 1e-12 ? 0.0 : li(y, cfg); }

}  // namespace

double loglog_gap(double log_x, double log_r) {
    if (!(log_r >= 0.0) || !(log_r < log_x)) throw DomainError("loglog gap needs 0 <= log r < log x");
    const double t = log_r / log_x;
    if (t < kSeriesSwitch) {
        // 2 * sum_{l<8} t^(2l+1)/(2l+1); the next term is below 1e-32 relative
        const double t2 = t * t;
        double sum = 0.0;
        double power = t;
        for (int l = 0; l < 8; ++l) {
            sum += power / (2 * l + 1);
            power *= t2;
        }
        return 2.0 * sum;
    }
    return std::log1p(t) - std::log1p(-t);
}

double loglog_diff(double x, double r) {
    if (!(r >= 1.0)) throw DomainError("loglog_diff needs r >= 1");
    if (!(r <= x / 4.0)) throw DomainError("loglog_diff needs r <= x/4");
    return loglog_gap(std::log(x), std::log1p(r - 1.0));
}

double loglog_diff(double x, const Rational& r) {
    if (r < Rational(1)) throw DomainError("loglog_diff needs r >= 1");
    if (r.to_double() > x / 4.0) throw DomainError("loglog_diff needs r <= x/4");
    return loglog_gap(std::log(x), r.log());
}

namespace {

constexpr std::array<Approximant, 9> kApproximants = {
    Approximant::landau, Approximant::decker_moree, Approximant::justus,
    Approximant::f_r,    Approximant::g_r,          Approximant::thm_large_int,
    Approximant::thm_large, Approximant::thm_small, Approximant::uniform};

}  // namespace

std::string_view to_string(Approximant m) {
    switch (m) {
        case Approximant::landau: return "landau";
        case Approximant::decker_moree: return "decker_moree";
        case Approximant::justus: return "justus";
        case Approximant::f_r: return "f_r";
        case Approximant::g_r: return "g_r";
        case Approximant::thm_large_int: return "thm_large_int";
        case Approximant::thm_large: return "thm_large";
        case Approximant::thm_small: return "thm_small";
        case Approximant::uniform: return "uniform";
    }
    return "?";
}

std::optional<Approximant> approximant_from_string(std::string_view name) {
    for (auto m : kApproximants)
        if (to_string(m) == name) return m;
    return std::nullopt;
}

std::span<const Approximant> all_approximants() { return kApproximants; }

std::string_view to_string(ErrorModelKind k) {
    switch (k) {
        case ErrorModelKind::dlvp: return "dlvp";
        case ErrorModelKind::kv: return "kv";
        case ErrorModelKind::grh: return "grh";
    }
    return "?";
}

std::optional<ErrorModelKind> error_model_from_string(std::string_view name) {
    if (name == "dlvp") return ErrorModelKind::dlvp;
    if (name == "kv") return ErrorModelKind::kv;
    if (name == "grh") return ErrorModelKind::grh;
    return std::nullopt;
}

double ErrorModel::default_k(ErrorModelKind kind) {
    // grh: (log y)^3/sqrt(y) peaks at log y = 6, 45.7 times its value at 2
    switch (kind) {
        case ErrorModelKind::dlvp: return 2.0;
        case ErrorModelKind::kv: return 2.0;
        case ErrorModelKind::grh: return 46.0;
    }
    return 1.0;
}

ErrorModel ErrorModel::make(ErrorModelKind kind, double c) {
    if (!(c > 0.0)) throw ValidationError("error model constant c must be positive");
    return ErrorModel{kind, c, default_k(kind)};
}

double delta(const ErrorModel& m, double x) {
    if (!(x >= 2.0)) throw DomainError("delta(x) needs x >= 2");
    return delta_of_log(m, std::log(x));
}

TailIntegral delta_tail(const ErrorModel& m, double x, const QuadratureConfig& cfg) {
    if (!(x >= 2.0)) throw DomainError("delta tail needs x >= 2");
    const double t0 = std::log(x);
    if (m.kind == ErrorModelKind::grh) {
        const double value = 2.0 * (t0 * t0 + 4.0 * t0 + 8.0) / std::sqrt(x);
        return {value, 0.0};
    }
    // In t = log u the integrand is delta(e^t) dt. Both kinds are bounded by
    // exp(-c sqrt t) (for kv because t^{3/5} >= sqrt(t) (log log(x+4))^{1/5}),
    // whose tail beyond T is root_exp_tail(c, T). Truncate once that is negligible.
    const double target = std::min(cfg.abs_tol, 1e-14);
    double cut = std::max(t0, 1.0);
    while (root_exp_tail(m.c, cut) > target) cut *= 2.0;
    auto f = [&](double t) { return delta_of_log(m, t); };
    TailIntegral out;
    out.value = adaptive_simpson(f, t0, cut, cfg);
    const double rest = root_exp_tail(m.c, cut);
    if (m.kind == ErrorModelKind::dlvp) {
        out.value += rest;  // exact for dlvp
        out.error_bound = std::max(cfg.abs_tol, cfg.rel_tol * out.value);
    } else {
        out.error_bound = rest + std::max(cfg.abs_tol, cfg.rel_tol * out.value);
    }
    return out;
}

double big_delta(const ErrorModel& m, double x, const QuadratureConfig& cfg) {
    return delta(m, x) + delta_tail(m, x, cfg).value;
}

ErrorModelConditions check_conditions(const ErrorModel& m, std::span<const double> grid, const QuadratureConfig& cfg) {
    ErrorModelConditions out;
    double run_max_growth = 0.0;
    double min_growth = INFINITY;
    double run_min_decay = INFINITY;
    for (double x : grid) {
        const double t = std::log(x);
        const double d = delta_of_log(m, t);
        const double growth = x * d / t;
        const double decay = d * t;
        run_max_growth = std::max(run_max_growth, growth);
        min_growth = std::min(min_growth, growth);
        run_min_decay = std::min(run_min_decay, decay);
        out.k_needed_1 = std::max(out.k_needed_1, run_max_growth / growth);
        out.k_needed_2 = std::max(out.k_needed_2, decay / run_min_decay);
    }
    out.k_needed_1 = std::max(out.k_needed_1, 1.0 / min_growth);
    out.growth_ok = out.k_needed_1 <= m.K;
    out.decay_ok = out.k_needed_2 <= m.K;
    out.tail_from_2 = delta_tail(m, 2.0, cfg).value;
    out.tail_finite = std::isfinite(out.tail_from_2);
    return out;
}

double g_r(double x, double r, const QuadratureConfig& cfg) {
    if (!(r >= 1.0) || !(x >= 4.0 * r)) throw DomainError("G_r(x) needs r >= 1 and x >= 4r");
    const double lo = std::sqrt(x / r);
    const double hi = std::sqrt(x);
    const double first = integrate_log_scale([&](double t) { return li_node(r * std::exp(t), cfg) / t; }, 2.0, lo, cfg);
    const double second = integrate_log_scale([&](double t) { return li_node(x / std::exp(t), cfg) / t; }, lo, hi, cfg);
    const double l = li(hi, cfg);
    return first + second - 0.5 * l * l;
}

double g_r_alt(double x, double r, const QuadratureConfig& cfg) {
    if (!(r >= 1.0) || !(x >= 4.0 * r)) throw DomainError("G_r(x) needs r >= 1 and x >= 4r");
    const double top = std::sqrt(x * r);
    const double l = li(std::sqrt(x), cfg);
    const double first =
        integrate_log_scale([&](double t) { return li_node(std::exp(t) / r, cfg) / t; }, 2.0 * r, top, cfg);
    const double second =
        integrate_log_scale([&](double t) { return li_node(x / std::exp(t), cfg) / t; }, std::sqrt(x), top, cfg);
    return 0.5 * l * l - first + second;
}

MainTerm main_term(Approximant m, double x, const Rational& r, const QuadratureConfig& cfg, const ErrorModel& model,
                   bool strict) {
    cfg.validate();
    if (!(x > 3.0)) throw DomainError("main_term needs x > 3");
    MainTerm out;
    const double lx = std::log(x);
    const double rd = r.to_double();
    const double lr = r.log();

    auto hypothesis = [&](bool holds, const std::string& text) {
        if (holds) return;
        if (strict) throw RangeError(std::string(to_string(m)) + ": hypothesis violated: " + text);
        out.warnings.push_back("hypothesis violated: " + text);
    };
    auto need_domain = [&](bool holds, const std::string& text) {
        if (!holds) throw DomainError(std::string(to_string(m)) + ": undefined unless " + text);
    };
    auto note_landau_boundary = [&] {
        if (r == Rational(static_cast<std::int64_t>(std::llround(x)), 4) || std::abs(rd - x / 4.0) <= 1e-12 * x)
            out.warnings.push_back("note: r = x/4 is the Landau boundary; the shape constraint is vacuous");
    };
    // integrand of F_r and of the large-r integral: gap(u, r) / log u, in t = log u
    auto gap_weight = [&](double t) { return loglog_gap(t, lr) / t; };

    switch (m) {
        case Approximant::landau:
            out.value = x * std::log(lx) / lx;
            break;
        case Approximant::decker_moree:
            need_domain(rd > 1.0, "r > 1");
            hypothesis((rd - 1.0) * lx >= 1.0, "1/(r-1) = o(log x), checked as (r-1) log x >= 1");
            out.value = 2.0 * x * lr / (lx * lx);
            break;
        case Approximant::justus:
        case Approximant::thm_large:
        case Approximant::uniform: {
            need_domain(rd >= 1.0 && rd < x, "1 <= r < x");
            if (m == Approximant::thm_large)
                hypothesis(rd >= 1.0 + std::exp(-model.c * std::sqrt(lx)), "r >= 1 + exp(-c sqrt(log x))");
            if (m == Approximant::uniform)
                hypothesis(rd > 1.0 + std::pow(x, -5.0 / 12.0), "r > 1 + x^(-5/12)");
            if (m == Approximant::justus) hypothesis(rd > 1.0, "r > 1");
            hypothesis(rd <= x / 4.0, "r <= x/4");
            note_landau_boundary();
            out.value = x / lx * loglog_gap(lx, lr);
            break;
        }
        case Approximant::thm_small:
            need_domain(rd >= 1.0 && rd < x, "1 <= r < x");
            hypothesis(rd > 1.0 + std::pow(x, -5.0 / 12.0), "r > 1 + x^(-5/12)");
            hypothesis(rd <= 1.5, "r <= 3/2");
            out.value = 2.0 * x * lr / (lx * lx);
            break;
        case Approximant::f_r:
            need_domain(rd > 1.0 && x >= 2.0 * rd, "r > 1 and x >= 2r");
            hypothesis(rd <= std::exp(model.c * std::sqrt(lx)),
                       "r <= exp(c sqrt(log x)), otherwise the error term dominates");
            out.value = integrate_log_scale(gap_weight, 2.0 * rd, x, cfg);
            break;
        case Approximant::g_r:
            need_domain(rd >= 1.0 && x >= 4.0 * rd, "1 <= r <= x/4");
            note_landau_boundary();
            out.value = g_r(x, rd, cfg);
            break;
        case Approximant::thm_large_int: {
            need_domain(rd >= 1.0 && x >= 4.0 * rd, "1 <= r <= x/4");
            note_landau_boundary();
            const double four_r = 4.0 * rd;
            const double l4r = std::log(four_r);
            out.value = integrate_log_scale(gap_weight, four_r, x, cfg) + four_r * std::log(l4r) / l4r;
            break;
        }
    }
    require_finite(out.value, "main term");
    return out;
}

}  // namespace rsacount
