#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bias.hpp"
#include "errors.hpp"

using namespace rsacount;

namespace {

const QuadraticCharacter& chi4() {
    static const auto c = QuadraticCharacter::parse("kronecker:-4");
    return c;
}

void check_same(const BiasReport& a, const BiasReport& b) {
    CHECK(a.x == b.x);
    CHECK(a.r == b.r);
    CHECK(a.s == b.s);
    CHECK(a.Q == b.Q);
    CHECK(a.eta == b.eta);
    CHECK(a.emp_num == b.emp_num);
    CHECK(a.emp_den == b.emp_den);
    CHECK(a.emp_ratio == b.emp_ratio);
    CHECK(a.l_chi == b.l_chi);
    CHECK(a.h_main == b.h_main);
    CHECK(a.pred_ratio == b.pred_ratio);
    CHECK(a.delta_sqrt_x == b.delta_sqrt_x);
    CHECK(a.bigdelta_term == b.bigdelta_term);
    CHECK(a.loglog_term == b.loglog_term);
    CHECK(a.status == b.status);
    CHECK(a.warnings == b.warnings);
}

}  // namespace

TEST_CASE("empirical_bias examples") {
    const auto minus = empirical_bias(RsaQuery(100, Rational(25)), chi4(), -1);
    CHECK(minus.num == 6);
    CHECK(minus.den == 16);
    CHECK(*minus.ratio == 0.375);
    const auto plus = empirical_bias(RsaQuery(100, Rational(25)), chi4(), 1);
    CHECK(plus.num == 2);
    CHECK(plus.den == 16);
    CHECK(*plus.ratio == 0.125);
    for (int eta : {1, -1}) {
        const auto none = empirical_bias(RsaQuery(10, Rational(5, 2)), chi4(), eta);
        CHECK(none.den == 0);
        CHECK_FALSE(none.ratio.has_value());
    }
}

TEST_CASE("empirical_bias argument checks") {
    CHECK_THROWS_AS(empirical_bias(RsaQuery(100, Rational(3)), chi4(), 0), ValidationError);
    CHECK_THROWS_AS(empirical_bias(RsaQuery(100, Rational(3)), chi4(), 2), ValidationError);
    const auto principal = QuadraticCharacter::from_table(4, {0, 1, 0, 1}, true);
    CHECK_THROWS_AS(empirical_bias(RsaQuery(100, Rational(3)), principal, 1), ContractError);
    CHECK(empirical_bias(RsaQuery(100, Rational(3, 2)), chi4(), 1).warnings.size() == 1);
    CHECK(empirical_bias(RsaQuery(100, Rational(30)), chi4(), 1).warnings.size() == 1);
    CHECK(empirical_bias(RsaQuery(100, Rational(25)), chi4(), 1).warnings.empty());
}

TEST_CASE("the four sign classes partition the coprime count") {
    for (const char* spec : {"kronecker:-4", "kronecker:-3", "kronecker:5", "kronecker:8"}) {
        const auto chi = QuadraticCharacter::parse(spec);
        for (std::uint64_t x : {1000ull, 54321ull, 1'000'000ull})
            for (Rational r : {Rational(2), Rational(17, 3), Rational(static_cast<std::int64_t>(x), 4)}) {
                const auto e = empirical_bias(RsaQuery(x, r), chi, 1);
                const auto& c = e.counts;
                CHECK(c.at(1, 1) + c.at(1, -1) + c.at(-1, 1) + c.at(-1, -1) == e.den);
                const auto m = empirical_bias(RsaQuery(x, r), chi, -1);
                CHECK(m.den == e.den);
                CHECK(m.num + e.num <= e.den);
            }
    }
}

TEST_CASE("predicted_bias composition") {
    const auto q = RsaQuery::from_s(100'000'000, Rational(100));
    const auto rep = predicted_bias(q, chi4(), 1);
    const auto l = l_chi_s(chi4(), Rational(100));
    CHECK(rep.l_chi == l.value);
    CHECK(rep.h_main == doctest::Approx(l.value / loglog_diff(1e8, 1e6)).epsilon(1e-14));
    CHECK(rep.pred_ratio == doctest::Approx(0.25 * (1 + rep.h_main)).epsilon(1e-15));
    CHECK(rep.status == "predicted_only");
    CHECK_FALSE(rep.emp_ratio.has_value());
    const auto grh = ErrorModel::make(ErrorModelKind::grh);
    CHECK(rep.delta_sqrt_x == doctest::Approx(delta(grh, 1e4)).epsilon(1e-15));
    CHECK(rep.bigdelta_term == doctest::Approx(big_delta(grh, 10.0) / std::log(1e8)).epsilon(1e-14));
    CHECK(rep.loglog_term == doctest::Approx(1 / std::log(std::log(1e8))).epsilon(1e-15));
    CHECK(std::isfinite(rep.pred_ratio));
    CHECK(rep.s == Rational(100'000'000) / rep.r);
    CHECK_THROWS_AS(predicted_bias(RsaQuery(100, Rational(30)), chi4(), 1), DomainError);
}

TEST_CASE("h_main is antisymmetric in eta") {
    for (std::uint64_t x : {1000ull, 1'000'000ull, 100'000'000ull})
        for (std::int64_t s : {4ll, 10ll, 100ll}) {
            const auto q = RsaQuery::from_s(x, Rational(s));
            const auto p = predicted_bias(q, chi4(), 1);
            const auto m = predicted_bias(q, chi4(), -1);
            CHECK(m.h_main == -p.h_main);
            CHECK(p.pred_ratio + m.pred_ratio == doctest::Approx(0.5).epsilon(1e-15));
        }
}

TEST_CASE("denominator at r = x/4 stays within log 2 + |loglog 4| of loglog x") {
    const double slack = std::log(2.0) + std::abs(std::log(std::log(4.0)));
    for (double x = 16; x <= 1e18; x *= 3.7)
        CHECK(std::abs(loglog_diff(x, x / 4) - std::log(std::log(x))) <= slack);
}

TEST_CASE("bias_report status and invariants") {
    const auto rep = bias_report(RsaQuery(100, Rational(25)), chi4(), -1);
    CHECK(rep.status == "ok");
    CHECK(*rep.emp_ratio == 0.375);
    CHECK(rep.emp_num == 6);
    CHECK(rep.emp_den == 16);
    const auto none = bias_report(RsaQuery(10, Rational(5, 2)), chi4(), 1);
    CHECK(none.status == "undefined_ratio");
    CHECK(std::isfinite(none.pred_ratio));
}

TEST_CASE("1-point grid reproduces the single report") {
    const GridPoint pt{1'000'000, Rational(1000)};
    const auto rows = bias_table(std::span(&pt, 1), chi4(), -1);
    REQUIRE(rows.size() == 1);
    const auto q = RsaQuery::from_s(pt.x, pt.s);
    check_same(rows[0], bias_report(q, chi4(), -1));
    const auto emp = empirical_bias(q, chi4(), -1);
    const auto pred = predicted_bias(q, chi4(), -1);
    CHECK(rows[0].emp_num == emp.num);
    CHECK(rows[0].emp_den == emp.den);
    CHECK(rows[0].emp_ratio == emp.ratio);
    CHECK(rows[0].h_main == pred.h_main);
    CHECK(rows[0].pred_ratio == pred.pred_ratio);
}

TEST_CASE("per-point failures stay in their rows") {
    const std::vector<GridPoint> grid{{1000, Rational(10)}, {1000, Rational(2)}, {1000, Rational(2000)}, {3000, Rational(4)}};
    const auto rows = bias_table(grid, chi4(), 1);
    REQUIRE(rows.size() == grid.size());
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status.starts_with("error: "));
    CHECK(rows[2].status.starts_with("error: "));
    CHECK(rows[3].status == "ok");
    CHECK(rows[1].x == 1000);
    CHECK(rows[1].s == Rational(2));
    CHECK_THROWS_AS(bias_table(grid, chi4(), 0), ValidationError);
}

TEST_CASE("dyadic grid at r = x/4: the eta = -1 class dominates") {
    std::vector<GridPoint> grid;
    for (std::uint64_t x = 1'000'000; x <= 100'000'000; x *= 2) grid.push_back({x, Rational(4)});
    BiasOptions opt;
    opt.threads = 4;
    const auto minus = bias_table(grid, chi4(), -1, opt);
    const auto plus = bias_table(grid, chi4(), 1, opt);
    REQUIRE(minus.size() == grid.size());
    REQUIRE(plus.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(minus[i].emp_ratio.has_value());
        CHECK(*minus[i].emp_ratio > *plus[i].emp_ratio);
        CHECK(minus[i].h_main > 0);
    }
}

TEST_CASE("tables are identical across thread counts") {
    std::vector<GridPoint> grid;
    for (std::uint64_t x : {200'000ull, 1'000'000ull, 3'000'000ull})
        for (std::int64_t s : {4ll, 50ll, 1000ll}) grid.push_back({x, Rational(s)});
    grid.push_back({100, Rational(1000)});
    BiasOptions one, many;
    many.threads = 5;
    many.sieve.threads = 3;
    const auto a = bias_table(grid, chi4(), 1, one);
    const auto b = bias_table(grid, chi4(), 1, many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) check_same(a[i], b[i]);
}

TEST_CASE("small r: h_main within a fitted constant of the dlvp envelope") {
    BiasOptions opt;
    opt.model = ErrorModel::make(ErrorModelKind::dlvp);
    const auto rep = predicted_bias(RsaQuery(100'000'000, Rational(2)), chi4(), 1, opt);
    const double envelope = big_delta(opt.model, std::sqrt(1e8 / 2));
    MESSAGE("|h_main| / Delta(sqrt(x/2)) = " << std::abs(rep.h_main) / envelope);
    CHECK(std::abs(rep.h_main) <= 1.0 * envelope);
}

TEST_CASE("empirical against predicted within the reported error terms") {
    // ratio error: (1/4)(|L| loglog_term + bigdelta_term)/D + (1/4) delta_sqrt_x
    double fitted = 0;
    for (std::uint64_t x : {1'000'000ull, 10'000'000ull})
        for (std::int64_t s : {4ll, 100ll, 10'000ll})
            for (int eta : {1, -1}) {
                const auto q = RsaQuery::from_s(x, Rational(s));
                const auto rep = bias_report(q, chi4(), eta);
                REQUIRE(rep.emp_ratio.has_value());
                const double d = loglog_diff(static_cast<double>(x), q.r());
                const double budget =
                    0.25 * ((std::abs(rep.l_chi) * rep.loglog_term + rep.bigdelta_term) / d + rep.delta_sqrt_x);
                fitted = std::max(fitted, std::abs(*rep.emp_ratio - rep.pred_ratio) / budget);
            }
    MESSAGE("fitted C = " << fitted);
    CHECK(fitted <= 10.0);
}
