#include "character.hpp"

#include <charconv>
#include <vector>

#include "errors.hpp"

namespace rsacount {

namespace {

std::int64_t parse_i64(std::string_view s, std::string_view spec) {
    std::int64_t v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("bad integer '" + std::string(s) + "' in character spec '" + std::string(spec) + "'");
    return v;
}

bool squarefree(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

constexpr std::uint64_t kMaxModulus = 100'000;

}  // namespace

int kronecker(std::int64_t d, std::uint64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    // factor out 2 from n
    unsigned twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (d % 2 == 0) return 0;
        const std::int64_t dm8 = ((d % 8) + 8) % 8;
        if ((twos & 1) && (dm8 == 3 || dm8 == 5)) result = -result;
    }
    // now n odd: Jacobi symbol (d/n)
    std::int64_t a = d % static_cast<std::int64_t>(n);
    if (a < 0) a += static_cast<std::int64_t>(n);
    std::uint64_t b = n;
    auto ua = static_cast<std::uint64_t>(a);
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            const std::uint64_t bm8 = b % 8;
            if (bm8 == 3 || bm8 == 5) result = -result;
        }
        std::swap(ua, b);
        if (ua % 4 == 3 && b % 4 == 3) result = -result;
        ua %= b;
    }
    return b == 1 ? result : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::int64_t m4 = ((d % 4) + 4) % 4;
    const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (m4 == 1) return squarefree(ad);
    if (m4 != 0) return false;
    const std::int64_t m = d / 4;
    const std::int64_t mm4 = ((m % 4) + 4) % 4;
    if (mm4 != 2 && mm4 != 3) return false;
    return squarefree(ad / 4);
}

CharacterCheck check_character_table(std::uint64_t modulus, std::span<const int> values) {
    CharacterCheck c;
    c.length_ok = modulus >= 3 && values.size() == modulus;
    if (!c.length_ok) return c;
    const std::uint64_t q = modulus;

    c.values_in_range = true;
    for (int v : values) c.values_in_range &= (v >= -1 && v <= 1);

    // non-units are the multiples of the prime factors of q
    std::vector<bool> non_unit(q, false);
    std::uint64_t rest = q;
    for (std::uint64_t p = 2; p <= rest; ++p) {
        if (p * p > rest) p = rest;
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        for (std::uint64_t m = 0; m < q; m += p) non_unit[m] = true;
    }

    c.zero_off_units = true;
    c.principal = true;
    long long sum = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
        const bool unit = !non_unit[a];
        c.zero_off_units &= (values[a] == 0) == !unit;
        if (unit) c.principal &= values[a] == 1;
        sum += values[a];
    }
    c.sums_to_zero = sum == 0;
    c.unit_at_one = values[1] == 1;

    c.multiplicative = c.unit_at_one && c.zero_off_units;
    if (!c.multiplicative) return c;
    // Off units both sides vanish, so only the unit group matters, and there
    // it suffices to check v(a g) = v(a) v(g) for g in a generating set.
    std::vector<bool> in_span(q, false);
    std::vector<std::uint64_t> span{1};
    in_span[1] = true;
    for (std::uint64_t g = 2; g < q && c.multiplicative; ++g) {
        if (non_unit[g] || in_span[g]) continue;
        for (std::uint64_t a = 1; a < q; ++a) {
            if (values[(a * g) % q] != values[a] * values[g]) {
                c.multiplicative = false;
                break;
            }
        }
        // span <- span * <g>
        const std::size_t base = span.size();
        for (std::uint64_t power = g; !in_span[power]; power = power * g % q)
            for (std::size_t i = 0; i < base; ++i) {
                const std::uint64_t h = span[i] * power % q;
                if (!in_span[h]) {
                    in_span[h] = true;
                    span.push_back(h);
                }
            }
    }
    return c;
}

QuadraticCharacter QuadraticCharacter::checked_table(std::uint64_t modulus, std::span<const int> values,
                                                     bool allow_principal) {
    if (modulus < 3) throw ValidationError("character modulus must be >= 3, got " + std::to_string(modulus));
    if (modulus > kMaxModulus) throw ValidationError("character modulus too large: " + std::to_string(modulus));
    const auto check = check_character_table(modulus, values);
    if (!check.length_ok)
        throw ValidationError("character table has " + std::to_string(values.size()) + " entries, expected " +
                              std::to_string(modulus));
    if (!check.values_in_range) throw ValidationError("character values must lie in {-1, 0, +1}");
    if (!check.zero_off_units) throw ValidationError("character must vanish exactly on non-units");
    if (!check.unit_at_one) throw ValidationError("character must map 1 to +1");
    if (!check.multiplicative) throw ValidationError("character table is not completely multiplicative");
    if (check.principal && !allow_principal)
        throw ValidationError("principal character mod " + std::to_string(modulus) +
                              " rejected: a non-principal quadratic character is required");

    QuadraticCharacter chi;
    chi.values_.assign(values.begin(), values.end());
    chi.principal_ = check.principal;
    return chi;
}

QuadraticCharacter QuadraticCharacter::from_table(std::uint64_t modulus, std::vector<int> values,
                                                  bool allow_principal) {
    auto chi = checked_table(modulus, values, allow_principal);
    chi.spec_ = "table:" + std::to_string(modulus) + ":";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) chi.spec_ += ',';
        chi.spec_ += std::to_string(values[i]);
    }
    return chi;
}

QuadraticCharacter QuadraticCharacter::from_discriminant(std::int64_t d) {
    if (!is_fundamental_discriminant(d))
        throw ValidationError(std::to_string(d) + " is not a fundamental discriminant");
    const std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (q < 3 || q > kMaxModulus) throw ValidationError("discriminant modulus out of range: " + std::to_string(q));
    std::vector<int> values(q);
    for (std::uint64_t a = 0; a < q; ++a) values[a] = kronecker(d, a);
    auto chi = checked_table(q, values, false);
    chi.spec_ = "kronecker:" + std::to_string(d);
    return chi;
}

QuadraticCharacter QuadraticCharacter::parse(std::string_view spec) {
    constexpr std::string_view kron = "kronecker:";
    constexpr std::string_view table = "table:";
    if (spec.starts_with(kron)) return from_discriminant(parse_i64(spec.substr(kron.size()), spec));
    if (spec.starts_with(table)) {
        auto rest = spec.substr(table.size());
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw ValidationError("character spec '" + std::string(spec) + "' must look like table:Q:v0,v1,...");
        const auto q = parse_i64(rest.substr(0, colon), spec);
        if (q < 3) throw ValidationError("character modulus must be >= 3");
        rest = rest.substr(colon + 1);
        std::vector<int> values;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            values.push_back(static_cast<int>(parse_i64(rest.substr(0, comma), spec)));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return from_table(static_cast<std::uint64_t>(q), std::move(values));
    }
    throw ValidationError("unknown character spec '" + std::string(spec) +
                          "'; valid forms: kronecker:D, table:Q:v0,v1,...");
}

void QuadraticCharacter::require_nonprincipal() const {
    if (principal_) throw ContractError("operation requires a non-principal character, got " + spec_);
}

}  // namespace rsacount
