#include "rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace rsacount {

namespace {

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ValidationError("not a rational number: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num > kMax || num < kMin || den > kMax)
        throw OverflowError("rational does not fit in 64-bit numerator/denominator");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw ValidationError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto n = parse_int(text.substr(0, slash), whole);
        const auto d = parse_int(text.substr(slash + 1), whole);
        if (d == 0) throw ValidationError("zero denominator in '" + std::string(whole) + "'");
        return Rational(n, d);
    }

    // mantissa[.fraction][e|E exponent], evaluated exactly
    std::string_view mant = text;
    int exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        const auto ex = parse_int(text.substr(e + 1), whole);
        if (ex < -18 || ex > 18) throw ValidationError("exponent out of range in '" + std::string(whole) + "'");
        exponent = static_cast<int>(ex);
    }
    bool negative = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
        negative = mant.front() == '-';
        mant.remove_prefix(1);
    }
    i128 num = 0;
    int frac_digits = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (char c : mant) {
        if (c == '.' && !seen_dot) {
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') throw ValidationError("not a rational number: '" + std::string(whole) + "'");
        any_digit = true;
        num = num * 10 + (c - '0');
        if (num > kMax * 10) throw OverflowError("rational literal too large: '" + std::string(whole) + "'");
        if (seen_dot) ++frac_digits;
    }
    if (!any_digit) throw ValidationError("not a rational number: '" + std::string(whole) + "'");
    i128 den = 1;
    int scale = exponent - frac_digits;
    for (; scale > 0; --scale) num *= 10;
    for (; scale < 0; ++scale) den *= 10;
    if (negative) num = -num;
    return from_wide(num, den);
}

std::int64_t Rational::floor() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const noexcept {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

double Rational::to_double() const noexcept {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

double Rational::log() const {
    if (num_ <= 0) throw DomainError("log of non-positive rational " + str());
    const i128 diff = static_cast<i128>(num_) - den_;
    // near 1, log1p of the exact offset avoids cancellation
    if (diff > -den_ / 2 && diff < den_) {
        return std::log1p(static_cast<double>(static_cast<long double>(diff) / den_));
    }
    return static_cast<double>(std::log(static_cast<long double>(num_)) -
                               std::log(static_cast<long double>(den_)));
}

Rational Rational::operator*(const Rational& o) const {
    // cross-reduce first so the 128-bit product stays small
    const i128 g1 = gcd128(num_, o.den_);
    const i128 g2 = gcd128(o.num_, den_);
    const i128 n = (static_cast<i128>(num_) / (g1 ? g1 : 1)) * (static_cast<i128>(o.num_) / (g2 ? g2 : 1));
    const i128 d = (static_cast<i128>(den_) / (g2 ? g2 : 1)) * (static_cast<i128>(o.den_) / (g1 ? g1 : 1));
    return from_wide(n, d);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw DomainError("division by zero rational");
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (inv.den_ < 0) {
        inv.num_ = -inv.num_;
        inv.den_ = -inv.den_;
    }
    return *this * inv;
}

Rational Rational::operator+(const Rational& o) const {
    return from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                     static_cast<i128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return from_wide(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                     static_cast<i128>(den_) * o.den_);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t mul_div_floor(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (c == 0) throw DomainError("mul_div_floor by zero");
    const u128 q = static_cast<u128>(a) * b / c;
    if (q > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("mul_div_floor result exceeds 64 bits");
    return static_cast<std::uint64_t>(q);
}

}  // namespace rsacount
