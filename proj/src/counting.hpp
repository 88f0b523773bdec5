#pragma once

#include <array>
#include <cstdint>

#include "character.hpp"
#include "primes.hpp"
#include "rational.hpp"

namespace rsacount {

// An (x, r) query for pi_2(x; r): products pq <= x with p < q <= r p.
class RsaQuery {
public:
    // Requires x >= 4 and r > 1.
    RsaQuery(std::uint64_t x, Rational r);
    // r derived as x / s; requires s > 0 and x / s > 1.
    static RsaQuery from_s(std::uint64_t x, const Rational& s);

    std::uint64_t x() const noexcept { return x_; }
    const Rational& r() const noexcept { return r_; }
    const Rational& s() const noexcept { return s_; }  // exactly x / r
    // r >= x/4: the shape constraint is vacuous.
    bool landau_regime() const noexcept { return landau_; }
    // min(r, x/4); what the sweep actually uses.
    const Rational& effective_r() const noexcept { return r_eff_; }

private:
    std::uint64_t x_;
    Rational r_;
    Rational s_;
    Rational r_eff_;
    bool landau_ = false;
};

struct CountBreakdown {
    std::uint64_t sum_mid = 0;    // sum over sqrt(x/r) < p <= sqrt(x) of pi(x/p)
    std::uint64_t sum_small = 0;  // sum over p <= sqrt(x/r) of pi(r p)
    std::uint64_t sum_sub = 0;    // sum over p <= sqrt(x) of pi(p)
    std::uint64_t total = 0;      // sum_mid + sum_small - sum_sub
};

CountBreakdown count_rsa_exact(const RsaQuery& q, const SieveConfig& cfg = {});

// Brute-force double loop over prime pairs; independent of the sweep.
std::uint64_t count_rsa_oracle(const RsaQuery& q, std::uint64_t cap = 1'000'000);

// Products of two distinct primes up to x.
std::uint64_t count_pi2(std::uint64_t x, const SieveConfig& cfg = {});

struct ClassifiedCount {
    // by_sign[i][j]: chi(p) = sign(i), chi(q) = sign(j), index 0 is +1, 1 is -1
    std::array<std::array<std::uint64_t, 2>, 2> by_sign{};
    std::uint64_t coprime_total = 0;  // pairs with (pq, Q) = 1
    std::uint64_t raw_total = 0;      // all pairs

    static constexpr std::size_t index(int sign) noexcept { return sign > 0 ? 0 : 1; }
    std::uint64_t at(int chi_p, int chi_q) const noexcept { return by_sign[index(chi_p)][index(chi_q)]; }
};

ClassifiedCount count_rsa_classified(const RsaQuery& q, const QuadraticCharacter& chi, const SieveConfig& cfg = {});

// Oracle counterpart of count_rsa_classified.
ClassifiedCount count_rsa_classified_oracle(const RsaQuery& q, const QuadraticCharacter& chi,
                                            std::uint64_t cap = 1'000'000);

}  // namespace rsacount
