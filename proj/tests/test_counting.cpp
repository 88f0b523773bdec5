#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "counting.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace rsacount;

namespace {

// Independent of the library: plain double loop with exact comparisons.
std::uint64_t naive_count(std::uint64_t x, const Rational& r) {
    const auto ps = oracle::primes_upto(x / 2);
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size() && ps[i] * ps[j] <= x; ++j)
            if (static_cast<i128>(ps[j]) * r.den() <= static_cast<i128>(ps[i]) * r.num()) ++n;
    return n;
}

std::vector<Rational> shapes(std::uint64_t x) {
    const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x)) * 1000));
    const auto xi = static_cast<std::int64_t>(x);
    std::vector<Rational> out;
    for (Rational r : {Rational(1025, 1024), Rational(9, 8), Rational(3, 2), Rational(2), Rational(3), Rational(10),
                       Rational(root, 1000), Rational(xi, 4), Rational(xi)})
        if (r > Rational(1)) out.push_back(r);
    return out;
}

}  // namespace

TEST_CASE("RsaQuery derives s and the landau flag exactly") {
    const RsaQuery q(100, Rational(3));
    CHECK(q.s() == Rational(100, 3));
    CHECK_FALSE(q.landau_regime());
    CHECK(q.effective_r() == Rational(3));
    const RsaQuery l(100, Rational(30));
    CHECK(l.landau_regime());
    CHECK(l.effective_r() == Rational(25));
    CHECK(RsaQuery(100, Rational(25)).landau_regime());
    const auto f = RsaQuery::from_s(100'000'000, Rational(100));
    CHECK(f.r() == Rational(1'000'000));
    CHECK(f.s() == Rational(100));
    CHECK_THROWS_AS(RsaQuery(3, Rational(2)), DomainError);
    CHECK_THROWS_AS(RsaQuery(100, Rational(1)), DomainError);
    CHECK_THROWS_AS(RsaQuery::from_s(100, Rational(0)), DomainError);
    CHECK_THROWS_AS(RsaQuery::from_s(100, Rational(100)), DomainError);
}

TEST_CASE("count_rsa_exact examples") {
    const auto b = count_rsa_exact(RsaQuery(100, Rational(3)));
    CHECK(b.total == 9);
    CHECK(b.total == b.sum_mid + b.sum_small - b.sum_sub);
    CHECK(count_rsa_exact(RsaQuery(100, Rational(25))).total == 30);
    CHECK(count_rsa_exact(RsaQuery(10, Rational(101, 100))).total == 0);
}

TEST_CASE("count_rsa_oracle examples") {
    CHECK(count_rsa_oracle(RsaQuery(100, Rational(3))) == 9);
    CHECK(count_rsa_oracle(RsaQuery(4, Rational(2))) == 0);
    CHECK(count_rsa_oracle(RsaQuery(100, Rational(25))) == 30);
    CHECK_THROWS_AS(count_rsa_oracle(RsaQuery(2'000'000, Rational(3))), ResourceError);
    CHECK(count_rsa_oracle(RsaQuery(2'000'000, Rational(3)), 2'000'000) ==
          count_rsa_exact(RsaQuery(2'000'000, Rational(3))).total);
}

TEST_CASE("count_pi2 examples") {
    CHECK(count_pi2(10) == 2);
    CHECK(count_pi2(100) == 30);
    CHECK(count_pi2(5) == 0);
    CHECK(count_pi2(0) == 0);
    CHECK(count_pi2(6) == 1);
}

TEST_CASE("boundary conventions are pinned") {
    // p < q strictly: 9 = 3*3 is not counted
    CHECK(count_pi2(9) == 1);
    // q <= r p inclusive: 2*3 with r = 3/2 exactly
    CHECK(count_rsa_exact(RsaQuery(6, Rational(3, 2))).total == 1);
    CHECK(count_rsa_exact(RsaQuery(6, Rational(149, 100))).total == 0);
    // pq <= x inclusive
    CHECK(count_rsa_exact(RsaQuery(5, Rational(10))).total == 0);
    CHECK(count_rsa_exact(RsaQuery(15, Rational(2))).total == 2);  // 6, 15
    CHECK(count_rsa_exact(RsaQuery(14, Rational(2))).total == 1);
}

TEST_CASE("exact count equals the oracle for x <= 3000 and every shape") {
    for (std::uint64_t x = 4; x <= 3000; ++x)
        for (const auto& r : shapes(x)) {
            const RsaQuery q(x, r);
            const auto exact = count_rsa_exact(q).total;
            REQUIRE(exact == count_rsa_oracle(q));
        }
}

TEST_CASE("exact count equals an independent double loop") {
    for (std::uint64_t x : {50ull, 999ull, 10007ull, 65536ull, 200000ull})
        for (const auto& r : shapes(x)) CHECK(count_rsa_exact(RsaQuery(x, r)).total == naive_count(x, r));
}

TEST_CASE("segment size and threads do not change counts") {
    SieveConfig tiny, threaded;
    tiny.segment_entries = 64;
    threaded.threads = 4;
    threaded.segment_entries = 1u << 10;
    for (std::uint64_t x : {10'000ull, 1'000'003ull})
        for (const auto& r : shapes(x)) {
            const RsaQuery q(x, r);
            const auto ref = count_rsa_exact(q).total;
            CHECK(count_rsa_exact(q, tiny).total == ref);
            CHECK(count_rsa_exact(q, threaded).total == ref);
        }
}

TEST_CASE("large r reduces to the unconstrained count") {
    for (std::uint64_t x : {1000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
        const auto xi = static_cast<std::int64_t>(x);
        const auto ref = count_pi2(x);
        for (Rational r : {Rational(xi, 4), Rational(xi, 3), Rational(xi), Rational(xi * 1000), Rational(xi + 1, 4)})
            CHECK(count_rsa_exact(RsaQuery(x, r)).total == ref);
    }
}

TEST_CASE("monotone in x and in r") {
    std::uint64_t prev = 0;
    for (std::uint64_t x = 4; x <= 5000; x += 17) {
        const auto c = count_rsa_exact(RsaQuery(x, Rational(3, 2))).total;
        CHECK(c >= prev);
        prev = c;
    }
    prev = 0;
    for (std::int64_t num = 1001; num <= 400'000; num = num * 5 / 4 + 1) {
        const auto c = count_rsa_exact(RsaQuery(100'000, Rational(num, 1000))).total;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("resource limit") {
    SieveConfig cfg;
    cfg.max_limit = 1000;
    CHECK_THROWS_AS(count_rsa_exact(RsaQuery(1001, Rational(2)), cfg), ResourceError);
}

TEST_CASE("classified count examples") {
    const auto chi = QuadraticCharacter::parse("kronecker:-4");
    const auto c = count_rsa_classified(RsaQuery(100, Rational(25)), chi);
    CHECK(c.at(1, 1) == 2);
    CHECK(c.at(1, -1) == 3);
    CHECK(c.at(-1, 1) == 5);
    CHECK(c.at(-1, -1) == 6);
    CHECK(c.coprime_total == 16);
    CHECK(c.raw_total == 30);
    const auto z = count_rsa_classified(RsaQuery(10, Rational(5, 2)), chi);
    CHECK(z.coprime_total == 0);
    CHECK(z.at(1, 1) + z.at(1, -1) + z.at(-1, 1) + z.at(-1, -1) == 0);
    CHECK(z.raw_total == 2);
}

TEST_CASE("classified count rejects principal characters") {
    CHECK_THROWS_AS(QuadraticCharacter::from_table(4, {0, 1, 0, 1}), ValidationError);
    const auto principal = QuadraticCharacter::from_table(4, {0, 1, 0, 1}, true);
    CHECK_THROWS_AS(count_rsa_classified(RsaQuery(100, Rational(3)), principal), ContractError);
}

TEST_CASE("classified count matches its oracle on random queries") {
    std::mt19937_64 rng(99);
    const char* specs[] = {"kronecker:-4", "kronecker:-3", "kronecker:5", "kronecker:8", "kronecker:-7",
                           "kronecker:12"};
    for (int i = 0; i < 200; ++i) {
        const auto chi = QuadraticCharacter::parse(specs[i % 6]);
        const auto x = std::uniform_int_distribution<std::uint64_t>(4, 60000)(rng);
        const auto den = std::uniform_int_distribution<std::int64_t>(1, 64)(rng);
        const auto num = std::uniform_int_distribution<std::int64_t>(den + 1, 300 * den)(rng);
        const RsaQuery q(x, Rational(num, den));
        const auto got = count_rsa_classified(q, chi);
        const auto ref = count_rsa_classified_oracle(q, chi);
        CHECK(got.by_sign == ref.by_sign);
        CHECK(got.coprime_total == ref.coprime_total);
        CHECK(got.raw_total == ref.raw_total);
        CHECK(got.at(1, 1) + got.at(1, -1) + got.at(-1, 1) + got.at(-1, -1) == got.coprime_total);
        CHECK(got.coprime_total <= got.raw_total);
        CHECK(got.raw_total == count_rsa_exact(q).total);

        // coprime_total = raw_total minus pairs containing a prime divisor of Q
        std::uint64_t with_divisor = 0;
        const auto ps = oracle::primes_upto(x / 2);
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size() && ps[a] * ps[b] <= x; ++b)
                if (static_cast<i128>(ps[b]) * den <= static_cast<i128>(ps[a]) * num &&
                    (chi.modulus() % ps[a] == 0 || chi.modulus() % ps[b] == 0))
                    ++with_divisor;
        CHECK(got.coprime_total == got.raw_total - with_divisor);
    }
}
