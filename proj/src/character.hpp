#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsacount {

// A real Dirichlet character mod Q, stored as its value table on residues.
// Immutable after construction; every instance has passed validate().
class QuadraticCharacter {
public:
    // "kronecker:D" with D a fundamental discriminant, or "table:Q:v0,v1,...".
    static QuadraticCharacter parse(std::string_view spec);
    static QuadraticCharacter from_discriminant(std::int64_t d);
    // Principal tables are rejected unless allow_principal is set.
    static QuadraticCharacter from_table(std::uint64_t modulus, std::vector<int> values,
                                         bool allow_principal = false);

    std::uint64_t modulus() const noexcept { return values_.size(); }
    bool principal() const noexcept { return principal_; }
    std::span<const std::int8_t> values() const noexcept { return values_; }
    int operator()(std::uint64_t n) const noexcept { return values_[n % values_.size()]; }

    // Canonical spec string; parse(spec()) reproduces the character.
    const std::string& spec() const noexcept { return spec_; }

    // Throws ContractError if the character is principal.
    void require_nonprincipal() const;

    friend bool operator==(const QuadraticCharacter& a, const QuadraticCharacter& b) {
        return a.values_ == b.values_;
    }

private:
    QuadraticCharacter() = default;
    static QuadraticCharacter checked_table(std::uint64_t modulus, std::span<const int> values, bool allow_principal);

    std::vector<std::int8_t> values_;
    bool principal_ = false;
    std::string spec_;
};

struct CharacterCheck {
    bool length_ok = false;
    bool values_in_range = false;  // every value in {-1, 0, +1}
    bool zero_off_units = false;   // values[a] == 0 iff gcd(a, Q) > 1
    bool unit_at_one = false;      // values[1] == +1
    bool multiplicative = false;   // values[ab mod Q] == values[a] * values[b]
    bool principal = false;        // +1 on every unit
    bool sums_to_zero = false;     // sum of the table vanishes

    bool valid() const noexcept {
        return length_ok && values_in_range && zero_off_units && unit_at_one && multiplicative;
    }
};

// Exhaustive check of the character axioms over all residue pairs.
CharacterCheck check_character_table(std::uint64_t modulus, std::span<const int> values);

// Kronecker symbol (d/n) for n >= 0.
int kronecker(std::int64_t d, std::uint64_t n);

bool is_fundamental_discriminant(std::int64_t d);

}  // namespace rsacount
