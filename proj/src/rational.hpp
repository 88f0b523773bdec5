#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rsacount {

using i128 = __int128;
using u128 = unsigned __int128;

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always stored in lowest terms. Comparisons cross-multiply in 128 bits.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    // Accepts "a", "a/b", decimals ("1.125") and integral scientific ("1e8").
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    // Largest integer <= value.
    std::int64_t floor() const noexcept;
    std::int64_t ceil() const noexcept;
    double to_double() const noexcept;
    // Natural log, accurate near 1 (uses log1p on (num-den)/den).
    double log() const;

    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        const i128 lhs = static_cast<i128>(a.num_) * b.den_;
        const i128 rhs = static_cast<i128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // "a" for integers, "a/b" otherwise.
    std::string str() const;

private:
    static Rational from_wide(i128 num, i128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// floor(sqrt(n)) for 64-bit n.
std::uint64_t isqrt(std::uint64_t n) noexcept;

// floor(a * b / c) for nonnegative operands, exact in 128 bits.
std::uint64_t mul_div_floor(std::uint64_t a, std::uint64_t b, std::uint64_t c);

}  // namespace rsacount
