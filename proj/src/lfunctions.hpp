#pragma once

#include <cstdint>

#include "asymptotics.hpp"
#include "character.hpp"
#include "rational.hpp"

namespace rsacount {

struct Estimate {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// L(1, chi) for a non-principal real character.
Estimate l_one(const QuadraticCharacter& chi);

struct MertensConfig {
    std::uint64_t prime_cutoff = 1'000'000;  // explicit prime-power correction for p <= cutoff
    double power_cutoff = 1e18;              // and p^k <= power_cutoff
    QuadratureConfig quadrature{1e-16, 1e-12, 60};
};

struct MertensConstant {
    double value = 0.0;  // sum over all primes of chi(p)/p
    double error = 0.0;
    double log_l_one = 0.0;
    double prime_power_correction = 0.0;
};

// sum_p chi(p)/p = log L(1, chi) - sum_p sum_{k>=2} chi(p)^k/(k p^k).
// Results are cached per (character table, config).
MertensConstant mertens_chi(const QuadraticCharacter& chi, const MertensConfig& cfg = {});

enum class TailMethod { mertens_completion };

struct BiasCoefficient {
    Rational s;
    double head = 0.0;   // (1/s) sum_{p < sqrt s} chi(p) p
    double tail = 0.0;   // sum_{p >= sqrt s} chi(p)/p
    double value = 0.0;  // head + tail
    double error = 0.0;
    TailMethod tail_method = TailMethod::mertens_completion;
};

// L_chi(s); the tail is completed from M_chi minus the finite sum over p < sqrt s.
BiasCoefficient l_chi_s(const QuadraticCharacter& chi, const Rational& s, const MertensConfig& cfg = {});

// Delta(sqrt s)/log s, the constant-free envelope for |L_chi(s)|.
double l_chi_bound(const Rational& s, const ErrorModel& model, const QuadratureConfig& cfg = {});

}  // namespace rsacount
