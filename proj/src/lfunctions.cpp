#include "lfunctions.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace rsacount {

namespace {

// Asymptotic digamma; accurate to long double precision for z >= 64.
long double digamma_large(long double z) {
    const long double z2 = 1.0L / (z * z);
    long double series = z2 * (1.0L / 12 -
                          z2 * (1.0L / 120 -
                                z2 * (1.0L / 252 -
                                      z2 * (1.0L / 240 - z2 * (1.0L / 132 - z2 * (691.0L / 32760 - z2 / 12.0L))))));
    return std::log(z) - 0.5L / z - series;
}

// Integral over [P, inf) of (1/(u^2 log u))(1 + a/log u) du, in t = log u.
double dusart_integral(double log_p, double a, const QuadratureConfig& cfg) {
    auto f = [&](double t) { return std::exp(-t) * (1.0 / t + a / (t * t)); };
    return adaptive_simpson(f, log_p, log_p + 60.0, cfg);
}

struct CacheKey {
    std::vector<std::int8_t> values;
    std::uint64_t prime_cutoff;
    double power_cutoff;

    bool operator<(const CacheKey& o) const {
        if (prime_cutoff != o.prime_cutoff) return prime_cutoff < o.prime_cutoff;
        if (power_cutoff != o.power_cutoff) return power_cutoff < o.power_cutoff;
        return values < o.values;
    }
};

std::shared_mutex g_cache_mutex;
std::map<CacheKey, MertensConstant> g_cache;

MertensConstant compute_mertens(const QuadraticCharacter& chi, const MertensConfig& cfg) {
    const auto l1 = l_one(chi);
    if (!(l1.value > 0.0)) throw DomainError("L(1, chi) is not positive for " + chi.spec());

    // below 599 the lower prime-count bound used for the tail fails
    const std::uint64_t cutoff = std::max<std::uint64_t>({cfg.prime_cutoff, chi.modulus(), 600});
    const auto table = sieve_primes(cutoff);

    long double correction = 0.0L;
    long double truncation = 0.0L;  // bound on omitted k for p <= cutoff
    for (std::uint64_t p : table.primes()) {
        const int v = chi(p);
        if (v == 0) continue;
        const long double inv = 1.0L / static_cast<long double>(p);
        long double power = inv * inv;  // p^-k
        long double sign = 1.0L;        // chi(p)^k
        long double pk = static_cast<long double>(p) * p;
        int k = 2;
        for (; pk <= cfg.power_cutoff; ++k) {
            sign = (v < 0 && k % 2 == 1) ? -1.0L : 1.0L;
            correction += sign * power / k;
            power *= inv;
            pk *= p;
        }
        truncation += power / k / (1.0L - inv);
    }

    // primes above the cutoff: k = 2 term from explicit prime-count bounds,
    // k >= 3 bounded by sum_{n > P} 1/(3 n^2 (n-1))
    const double P = static_cast<double>(cutoff);
    const double log_p = std::log(P);
    const double boundary = -static_cast<double>(table.size()) / (P * P);
    const double lo = boundary + 2.0 * dusart_integral(log_p, 1.0, cfg.quadrature);
    const double hi = boundary + 2.0 * dusart_integral(log_p, 1.2762, cfg.quadrature);
    const double k2_tail = 0.25 * (lo + hi);  // half of the midpoint of sum_{p > P} 1/p^2
    const double k2_err = 0.25 * (hi - lo);
    const double k3_bound = 1.0 / (6.0 * (P - 2.0) * (P - 2.0));

    MertensConstant out;
    out.log_l_one = std::log(l1.value);
    out.prime_power_correction = static_cast<double>(correction) + k2_tail;
    out.value = out.log_l_one - out.prime_power_correction;
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(out.log_l_one) + 1.0);
    out.error = l1.error / l1.value + static_cast<double>(truncation) + k2_err + k3_bound + rounding;
    return out;
}

}  // namespace

Estimate l_one(const QuadraticCharacter& chi) {
    chi.require_nonprincipal();
    const std::uint64_t q = chi.modulus();
    const std::uint64_t blocks = 64;
    // sum_{n <= blocks*q} chi(n)/n, then the exact remainder
    // -(1/q) sum_a chi(a) psi(blocks + a/q), valid because sum_a chi(a) = 0
    long double partial = 0.0L;
    for (std::uint64_t n = 1; n <= blocks * q; ++n) {
        const int v = chi(n);
        if (v) partial += static_cast<long double>(v) / static_cast<long double>(n);
    }
    long double tail = 0.0L;
    for (std::uint64_t a = 1; a <= q; ++a) {
        const int v = chi(a);
        if (v) tail -= v * digamma_large(static_cast<long double>(blocks) + static_cast<long double>(a) / q);
    }
    tail /= static_cast<long double>(q);
    Estimate e;
    e.value = static_cast<double>(partial + tail);
    e.error = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(e.value));
    return e;
}

MertensConstant mertens_chi(const QuadraticCharacter& chi, const MertensConfig& cfg) {
    chi.require_nonprincipal();
    CacheKey key{std::vector<std::int8_t>(chi.values().begin(), chi.values().end()), cfg.prime_cutoff,
                 cfg.power_cutoff};
    {
        std::shared_lock lock(g_cache_mutex);
        if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
    }
    auto value = compute_mertens(chi, cfg);
    std::unique_lock lock(g_cache_mutex);
    return g_cache.try_emplace(std::move(key), value).first->second;
}

BiasCoefficient l_chi_s(const QuadraticCharacter& chi, const Rational& s, const MertensConfig& cfg) {
    chi.require_nonprincipal();
    if (s < Rational(4)) throw DomainError("L_chi(s) needs s >= 4, got " + s.str());
    const auto m = mertens_chi(chi, cfg);
    const auto num = static_cast<u128>(s.num());
    const auto den = static_cast<u128>(s.den());
    const auto table = sieve_primes(isqrt(static_cast<std::uint64_t>(s.floor())));

    long double weighted = 0.0L;    // sum chi(p) p over p < sqrt s
    long double reciprocal = 0.0L;  // sum chi(p)/p over p < sqrt s
    for (std::uint64_t p : table.primes()) {
        if (static_cast<u128>(p) * p * den >= num) break;  // p^2 < s, compared exactly
        const int v = chi(p);
        if (!v) continue;
        weighted += v * static_cast<long double>(p);
        reciprocal += v / static_cast<long double>(p);
    }
    BiasCoefficient out;
    out.s = s;
    out.head = static_cast<double>(weighted * static_cast<long double>(s.den()) / static_cast<long double>(s.num()));
    out.tail = static_cast<double>(static_cast<long double>(m.value) - reciprocal);
    out.value = out.head + out.tail;
    out.error = m.error + 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(out.value));
    return out;
}

double l_chi_bound(const Rational& s, const ErrorModel& model, const QuadratureConfig& cfg) {
    if (s < Rational(4)) throw DomainError("L_chi bound needs s >= 4, got " + s.str());
    const double sd = s.to_double();
    return big_delta(model, std::sqrt(sd), cfg) / s.log();
}

}  // namespace rsacount
