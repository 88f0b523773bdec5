#pragma once

#include <algorithm>
#include <cmath>

namespace rsacount {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;

    // Throws ValidationError unless both tolerances are positive and max_depth >= 10.
    void validate() const;
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || lm <= a || b <= rm) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson correction. The target error is
// max(abs_tol, rel_tol * |I|), with |I| taken from a 32-panel first pass.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    constexpr int panels = 32;
    const double h = (b - a) / panels;
    double fx[2 * panels + 1];
    for (int i = 0; i <= 2 * panels; ++i) fx[i] = f(a + 0.5 * h * i);
    double coarse = 0.0;
    for (int i = 0; i < panels; ++i) coarse += h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(coarse)) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + h * i;
        const double hi = (i + 1 == panels) ? b : a + h * (i + 1);
        const double whole = h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
        sum += detail::simpson_step(f, lo, hi, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], whole, tol, cfg.max_depth);
    }
    return sum;
}

}  // namespace rsacount
