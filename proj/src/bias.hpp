#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "counting.hpp"
#include "lfunctions.hpp"

namespace rsacount {

struct BiasOptions {
    SieveConfig sieve;
    QuadratureConfig quadrature;
    MertensConfig mertens;
    ErrorModel model = ErrorModel::make(ErrorModelKind::grh);
    unsigned threads = 1;  // grid points evaluated concurrently
};

struct EmpiricalBias {
    std::uint64_t num = 0;             // chi(p) = chi(q) = eta
    std::uint64_t den = 0;             // pairs coprime to Q
    std::optional<double> ratio;       // empty when den == 0
    ClassifiedCount counts;
    std::vector<std::string> warnings;
};

// Requires eta = +1 or -1. r outside [2, x/4] only adds a warning.
EmpiricalBias empirical_bias(const RsaQuery& q, const QuadraticCharacter& chi, int eta,
                             const SieveConfig& cfg = {});

struct BiasReport {
    std::uint64_t x = 0;
    Rational r{2};
    Rational s{2};
    std::uint64_t Q = 0;
    int eta = 1;
    std::uint64_t emp_num = 0;
    std::uint64_t emp_den = 0;
    std::optional<double> emp_ratio;
    double l_chi = 0.0;
    double h_main = 0.0;      // eta L_chi(s) / loglog_diff(x, r)
    double pred_ratio = 0.0;  // (1 + h_main) / 4
    double delta_sqrt_x = 0.0;
    double bigdelta_term = 0.0;  // Delta(sqrt s) / log x
    double loglog_term = 0.0;    // 1 / loglog x
    std::string status = "ok";   // ok, undefined_ratio, predicted_only, or "error: ..."
    std::vector<std::string> warnings;
};

// Predicted columns only; the empirical fields are left empty with status predicted_only.
BiasReport predicted_bias(const RsaQuery& q, const QuadraticCharacter& chi, int eta, const BiasOptions& opt = {});

// Empirical and predicted columns for one query.
BiasReport bias_report(const RsaQuery& q, const QuadraticCharacter& chi, int eta, const BiasOptions& opt = {});

struct GridPoint {
    std::uint64_t x = 0;
    Rational s{4};
};

// One report per point, in input order. Per-point failures land in the row status.
std::vector<BiasReport> bias_table(std::span<const GridPoint> grid, const QuadraticCharacter& chi, int eta,
                                   const BiasOptions& opt = {});

}  // namespace rsacount
