#include "counting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "errors.hpp"

namespace rsacount {

namespace {

// Per prime p <= sqrt(x), the inner-sum bound min(r p, x/p) and which branch won.
struct Dissection {
    std::vector<std::uint64_t> primes;
    std::vector<Rational> bound;
    std::vector<bool> small;  // true when r p <= x/p, i.e. p <= sqrt(x/r)
};

Dissection dissect(const RsaQuery& q, const SieveConfig& cfg) {
    const std::uint64_t x = q.x();
    const auto table = sieve_primes(isqrt(x), cfg);
    const auto a = static_cast<std::uint64_t>(q.effective_r().num());
    const auto b = static_cast<std::uint64_t>(q.effective_r().den());

    Dissection d;
    d.primes.assign(table.primes().begin(), table.primes().end());
    d.bound.reserve(d.primes.size());
    for (std::uint64_t p : d.primes) {
        // r p <= x/p  <=>  a p^2 <= x b
        const bool small = static_cast<u128>(a) * p * p <= static_cast<u128>(x) * b;
        d.small.push_back(small);
        if (!small) {
            d.bound.emplace_back(static_cast<std::int64_t>(x), static_cast<std::int64_t>(p));
            continue;
        }
        try {
            d.bound.push_back(q.effective_r() * Rational(static_cast<std::int64_t>(p)));
        } catch (const OverflowError&) {
            // pi only sees floor(r p); the floor is exact in 128-bit arithmetic
            d.bound.emplace_back(static_cast<std::int64_t>(mul_div_floor(a, p, b)));
        }
    }
    return d;
}

// Sorted batch plus the permutation back to prime order.
std::pair<ThresholdBatch, std::vector<std::size_t>> sorted_batch(const std::vector<Rational>& bounds) {
    std::vector<std::size_t> order(bounds.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return bounds[i] < bounds[j]; });
    std::vector<Rational> sorted;
    sorted.reserve(bounds.size());
    for (auto i : order) sorted.push_back(bounds[i]);
    return {ThresholdBatch(std::move(sorted)), std::move(order)};
}

std::vector<bool> oracle_sieve(std::uint64_t n) {
    std::vector<bool> prime(n + 1, true);
    prime[0] = false;
    if (n >= 1) prime[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (prime[i])
            for (std::uint64_t j = i * i; j <= n; j += i) prime[j] = false;
    return prime;
}

// Calls fn(p, q) for every pair with pq <= x and p < q <= r p, straight from
// the definition.
template <class Fn>
void for_each_pair(const RsaQuery& q, std::uint64_t cap, Fn&& fn) {
    const std::uint64_t x = q.x();
    if (x > cap)
        throw ResourceError("oracle cap " + std::to_string(cap) + " exceeded by x = " + std::to_string(x));
    const auto prime = oracle_sieve(x / 2);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= x / 2; ++n)
        if (prime[n]) primes.push_back(n);
    const auto a = static_cast<u128>(q.r().num());
    const auto b = static_cast<u128>(q.r().den());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        for (std::size_t j = i + 1; j < primes.size(); ++j) {
            const std::uint64_t qq = primes[j];
            if (static_cast<u128>(p) * qq > x) break;
            if (static_cast<u128>(qq) * b > a * p) break;
            fn(p, qq);
        }
    }
}

}  // namespace

RsaQuery::RsaQuery(std::uint64_t x, Rational r) : x_(x), r_(r) {
    if (x < 4) throw DomainError("RSA query needs x >= 4, got " + std::to_string(x));
    if (x > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw OverflowError("x does not fit in a signed 64-bit integer");
    if (r <= Rational(1)) throw DomainError("RSA query needs r > 1, got " + r.str());
    const Rational xr(static_cast<std::int64_t>(x));
    s_ = xr / r;
    const Rational quarter = xr / Rational(4);
    landau_ = r >= quarter;
    r_eff_ = landau_ ? quarter : r;
}

RsaQuery RsaQuery::from_s(std::uint64_t x, const Rational& s) {
    if (s <= Rational(0)) throw DomainError("s must be positive, got " + s.str());
    return RsaQuery(x, Rational(static_cast<std::int64_t>(x)) / s);
}

CountBreakdown count_rsa_exact(const RsaQuery& q, const SieveConfig& cfg) {
    if (q.x() > cfg.max_limit)
        throw ResourceError("x = " + std::to_string(q.x()) + " exceeds configured maximum " +
                            std::to_string(cfg.max_limit));
    const auto d = dissect(q, cfg);
    const auto [batch, order] = sorted_batch(d.bound);
    const auto counts = prime_count_batch(q.x(), batch, cfg);

    CountBreakdown out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        (d.small[i] ? out.sum_small : out.sum_mid) += counts[k];
    }
    const std::uint64_t n = d.primes.size();
    out.sum_sub = n * (n + 1) / 2;
    out.total = out.sum_mid + out.sum_small - out.sum_sub;
    return out;
}

std::uint64_t count_rsa_oracle(const RsaQuery& q, std::uint64_t cap) {
    std::uint64_t count = 0;
    for_each_pair(q, cap, [&](std::uint64_t, std::uint64_t) { ++count; });
    return count;
}

std::uint64_t count_pi2(std::uint64_t x, const SieveConfig& cfg) {
    if (x < 6) return 0;
    return count_rsa_exact(RsaQuery(x, Rational(static_cast<std::int64_t>(x), 4)), cfg).total;
}

ClassifiedCount count_rsa_classified(const RsaQuery& q, const QuadraticCharacter& chi, const SieveConfig& cfg) {
    chi.require_nonprincipal();
    if (q.x() > cfg.max_limit)
        throw ResourceError("x = " + std::to_string(q.x()) + " exceeds configured maximum " +
                            std::to_string(cfg.max_limit));
    const auto d = dissect(q, cfg);
    const auto [batch, order] = sorted_batch(d.bound);
    const auto at_bound = prime_count_char_batch(q.x(), batch, chi, cfg);

    // class counts of primes <= p, in prime order
    std::vector<CharClassCount> at_p(d.primes.size());
    CharClassCount running;
    for (std::size_t i = 0; i < d.primes.size(); ++i) {
        const int v = chi(d.primes[i]);
        (v > 0 ? running.plus : v < 0 ? running.minus : running.zero) += 1;
        at_p[i] = running;
    }

    ClassifiedCount out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        const auto& hi = at_bound[k];
        const auto& lo = at_p[i];
        const std::uint64_t plus = hi.plus - lo.plus;
        const std::uint64_t minus = hi.minus - lo.minus;
        const std::uint64_t zero = hi.zero - lo.zero;
        out.raw_total += plus + minus + zero;
        const int cp = chi(d.primes[i]);
        if (cp == 0) continue;
        out.by_sign[ClassifiedCount::index(cp)][0] += plus;
        out.by_sign[ClassifiedCount::index(cp)][1] += minus;
    }
    for (const auto& row : out.by_sign)
        for (auto v : row) out.coprime_total += v;
    return out;
}

ClassifiedCount count_rsa_classified_oracle(const RsaQuery& q, const QuadraticCharacter& chi, std::uint64_t cap) {
    ClassifiedCount out;
    for_each_pair(q, cap, [&](std::uint64_t p, std::uint64_t qq) {
        ++out.raw_total;
        const int a = chi(p);
        const int b = chi(qq);
        if (a == 0 || b == 0) return;
        ++out.coprime_total;
        ++out.by_sign[ClassifiedCount::index(a)][ClassifiedCount::index(b)];
    });
    return out;
}

}  // namespace rsacount
