#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "character.hpp"
#include "rational.hpp"

namespace rsacount {

struct SieveConfig {
    std::uint64_t segment_entries = 1u << 20;  // odd-only bits per segment
    std::uint64_t max_limit = 1'000'000'000'000ull;
    std::uint64_t memory_budget = 1ull << 30;  // bytes, for materialized tables
    unsigned threads = 1;
};

// Primes up to an inclusive limit plus the step function pi(y), y <= limit.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }

    // pi(y); y above the limit is a contract violation.
    std::uint64_t prefix_count(std::uint64_t y) const;

    friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& cfg = {});

// pi(y) with y compared exactly, i.e. pi(floor(y)).
std::uint64_t prime_count(const Rational& y, const SieveConfig& cfg = {});

// Nonnegative exact thresholds in ascending order (duplicates allowed).
class ThresholdBatch {
public:
    ThresholdBatch() = default;
    // Throws ContractError if values are unsorted or negative.
    explicit ThresholdBatch(std::vector<Rational> values);

    std::span<const Rational> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

private:
    std::vector<Rational> values_;
};

// result[i] == prime_count(batch[i]), from a single sweep over [2, x_max].
std::vector<std::uint64_t> prime_count_batch(std::uint64_t x_max, const ThresholdBatch& batch,
                                             const SieveConfig& cfg = {});

struct CharClassCount {
    std::uint64_t plus = 0;   // chi(p) == +1
    std::uint64_t minus = 0;  // chi(p) == -1
    std::uint64_t zero = 0;   // chi(p) == 0, i.e. p | Q

    std::int64_t signed_sum() const noexcept {
        return static_cast<std::int64_t>(plus) - static_cast<std::int64_t>(minus);
    }
    std::uint64_t total() const noexcept { return plus + minus + zero; }

    friend bool operator==(const CharClassCount&, const CharClassCount&) = default;
};

CharClassCount prime_count_char(const Rational& y, const QuadraticCharacter& chi, const SieveConfig& cfg = {});

// Character-classified counterpart of prime_count_batch.
std::vector<CharClassCount> prime_count_char_batch(std::uint64_t x_max, const ThresholdBatch& batch,
                                                   const QuadraticCharacter& chi, const SieveConfig& cfg = {});

// Sum over integer t in [x, 2x) of (pi(t+h) - pi(t) - h/log t)^2.
double short_interval_variance(std::uint64_t x, std::uint64_t h, const SieveConfig& cfg = {});

// x h^2/(log x)^2 * (loglog x/log x)^2, the normalizer for the statistic above.
double short_interval_envelope(std::uint64_t x, std::uint64_t h);

// Primality flags for every integer in [lo, hi].
std::vector<std::uint8_t> prime_flags(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = {});

}  // namespace rsacount
