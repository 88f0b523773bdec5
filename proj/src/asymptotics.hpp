#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadrature.hpp"
#include "rational.hpp"

namespace rsacount {

// Li(x) = integral over [2, x] of du / log u.
double li(double x, const QuadratureConfig& cfg = {});
// Li_2(x) = integral over [2, x] of du / (log u)^2.
double li2(double x, const QuadratureConfig& cfg = {});

// log log(xr) - log log(x/r) for 1 <= r <= x/4.
double loglog_diff(double x, double r);
double loglog_diff(double x, const Rational& r);
// Same quantity from logarithms: log(L + l) - log(L - l), 0 <= l < L.
// Uses the odd power series when l/L < 1e-4.
double loglog_gap(double log_x, double log_r);

enum class Approximant { landau, decker_moree, justus, f_r, g_r, thm_large_int, thm_large, thm_small, uniform };

std::string_view to_string(Approximant m);
std::optional<Approximant> approximant_from_string(std::string_view name);
std::span<const Approximant> all_approximants();

enum class ErrorModelKind { dlvp, kv, grh };

std::string_view to_string(ErrorModelKind k);
std::optional<ErrorModelKind> error_model_from_string(std::string_view name);

// A prime-number-theorem error envelope delta(x) with constants c and K.
struct ErrorModel {
    ErrorModelKind kind = ErrorModelKind::grh;
    double c = 1.0;
    double K = 1.0;

    // Default K is the smallest round constant for which the regularity
    // conditions hold on [2, inf) with c = 1 (see default_k).
    static ErrorModel make(ErrorModelKind kind, double c = 1.0);
    static double default_k(ErrorModelKind kind);
};

double delta(const ErrorModel& m, double x);

struct TailIntegral {
    double value = 0.0;
    double error_bound = 0.0;
};
// Integral over [x, inf) of delta(u)/u du.
TailIntegral delta_tail(const ErrorModel& m, double x, const QuadratureConfig& cfg = {});
// delta(x) + the tail integral.
double big_delta(const ErrorModel& m, double x, const QuadratureConfig& cfg = {});

struct ErrorModelConditions {
    double k_needed_1 = 0.0;  // smallest K satisfying the growth condition on the grid
    double k_needed_2 = 0.0;  // smallest K satisfying the log-decay condition on the grid
    double tail_from_2 = 0.0;
    bool growth_ok = false;   // 1/K <= x delta(x)/log x <= K y delta(y)/log y
    bool decay_ok = false;    // delta(y) log y <= K delta(x) log x
    bool tail_finite = false;
};
// Checks the three regularity conditions for all pairs x <= y of the grid.
ErrorModelConditions check_conditions(const ErrorModel& m, std::span<const double> grid,
                                      const QuadratureConfig& cfg = {});

// Both forms of G_r(x); valid for 1 <= r and x >= 4r.
double g_r(double x, double r, const QuadratureConfig& cfg = {});
double g_r_alt(double x, double r, const QuadratureConfig& cfg = {});

struct MainTerm {
    double value = 0.0;
    std::vector<std::string> warnings;  // violated theorem hypotheses and boundary notes
};

// Main term of the chosen approximant. Hypothesis violations are warnings,
// or RangeError when strict; mathematically undefined inputs throw DomainError.
MainTerm main_term(Approximant m, double x, const Rational& r, const QuadratureConfig& cfg = {},
                   const ErrorModel& model = ErrorModel::make(ErrorModelKind::grh), bool strict = false);

}  // namespace rsacount
