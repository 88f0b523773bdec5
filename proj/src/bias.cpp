#include "bias.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "errors.hpp"

namespace rsacount {

namespace {

void require_eta(int eta) {
    if (eta != 1 && eta != -1) throw ValidationError("eta must be +1 or -1, got " + std::to_string(eta));
}

std::vector<std::string> range_warnings(const RsaQuery& q) {
    std::vector<std::string> out;
    if (q.r() < Rational(2)) out.push_back("warning: r < 2 is below the bias theorem range");
    if (q.r() > Rational(static_cast<std::int64_t>(q.x()), 4))
        out.push_back("warning: r > x/4 is above the bias theorem range");
    return out;
}

}  // namespace

EmpiricalBias empirical_bias(const RsaQuery& q, const QuadraticCharacter& chi, int eta, const SieveConfig& cfg) {
    require_eta(eta);
    chi.require_nonprincipal();
    EmpiricalBias out;
    out.warnings = range_warnings(q);
    out.counts = count_rsa_classified(q, chi, cfg);
    out.num = out.counts.at(eta, eta);
    out.den = out.counts.coprime_total;
    if (out.den > 0) out.ratio = static_cast<double>(out.num) / static_cast<double>(out.den);
    return out;
}

BiasReport predicted_bias(const RsaQuery& q, const QuadraticCharacter& chi, int eta, const BiasOptions& opt) {
    require_eta(eta);
    BiasReport rep;
    rep.x = q.x();
    rep.r = q.r();
    rep.s = q.s();
    rep.Q = chi.modulus();
    rep.eta = eta;
    rep.status = "predicted_only";
    if (q.s() < Rational(4)) throw DomainError("prediction needs s >= 4, got s = " + q.s().str());

    const auto coeff = l_chi_s(chi, q.s(), opt.mertens);
    const double xd = static_cast<double>(q.x());
    rep.l_chi = coeff.value;
    rep.h_main = eta * coeff.value / loglog_diff(xd, q.r());
    rep.pred_ratio = 0.25 * (1.0 + rep.h_main);
    rep.delta_sqrt_x = delta(opt.model, std::sqrt(xd));
    rep.bigdelta_term = big_delta(opt.model, std::sqrt(q.s().to_double()), opt.quadrature) / std::log(xd);
    rep.loglog_term = 1.0 / std::log(std::log(xd));
    rep.warnings = range_warnings(q);
    return rep;
}

BiasReport bias_report(const RsaQuery& q, const QuadraticCharacter& chi, int eta, const BiasOptions& opt) {
    auto rep = predicted_bias(q, chi, eta, opt);
    const auto emp = empirical_bias(q, chi, eta, opt.sieve);
    rep.emp_num = emp.num;
    rep.emp_den = emp.den;
    rep.emp_ratio = emp.ratio;
    rep.status = emp.ratio ? "ok" : "undefined_ratio";
    return rep;
}

std::vector<BiasReport> bias_table(std::span<const GridPoint> grid, const QuadraticCharacter& chi, int eta,
                                   const BiasOptions& opt) {
    require_eta(eta);
    std::vector<BiasReport> rows(grid.size());
    auto evaluate = [&](std::size_t i, const BiasOptions& local) {
        const auto& pt = grid[i];
        try {
            rows[i] = bias_report(RsaQuery::from_s(pt.x, pt.s), chi, eta, local);
        } catch (const std::exception& e) {
            BiasReport rep;
            rep.x = pt.x;
            rep.s = pt.s;
            try {
                if (pt.s > Rational(0)) rep.r = Rational(static_cast<std::int64_t>(pt.x)) / pt.s;
            } catch (const Error&) {
            }
            rep.Q = chi.modulus();
            rep.eta = eta;
            rep.status = std::string("error: ") + e.what();
            rows[i] = std::move(rep);
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(grid.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i, opt);
        return rows;
    }
    // points run concurrently, each with a single-threaded sieve
    BiasOptions local = opt;
    local.sieve.threads = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < grid.size(); i = next++) evaluate(i, local);
        });
    pool.clear();
    return rows;
}

}  // namespace rsacount
