#include "primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"
#include "sieve.hpp"

namespace rsacount {

namespace {

void check_limit(std::uint64_t limit, const SieveConfig& cfg) {
    if (limit > cfg.max_limit)
        throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds configured maximum " +
                            std::to_string(cfg.max_limit));
}

std::uint64_t floor_nonneg(const Rational& y) {
    if (y.num() < 0) throw ContractError("negative prime-count threshold " + y.str());
    return static_cast<std::uint64_t>(y.floor());
}

// Thresholds (as floors) grouped by the segment containing their last odd number.
struct SegmentSlices {
    std::vector<std::size_t> begin;  // per segment, first threshold index
    std::vector<std::size_t> end;
};

SegmentSlices slice_by_segment(const OddSegmentSieve& sieve, const std::vector<std::uint64_t>& floors) {
    SegmentSlices s;
    s.begin.assign(sieve.segment_count(), 0);
    s.end.assign(sieve.segment_count(), 0);
    std::size_t i = 0;
    while (i < floors.size() && floors[i] == 0) ++i;
    for (std::size_t k = 0; k < sieve.segment_count(); ++k) {
        s.begin[k] = i;
        while (i < floors.size() && sieve.segment_of(floors[i] % 2 ? floors[i] : floors[i] - 1) == k) ++i;
        s.end[k] = i;
    }
    return s;
}

std::vector<std::uint64_t> floors_of(std::uint64_t x_max, const ThresholdBatch& batch) {
    std::vector<std::uint64_t> floors;
    floors.reserve(batch.size());
    for (const auto& t : batch.values()) {
        const auto f = floor_nonneg(t);
        if (f > x_max)
            throw ContractError("threshold " + t.str() + " exceeds sweep bound " + std::to_string(x_max));
        floors.push_back(f);
    }
    return floors;
}

// Bit index within seg of the largest odd number <= t.
std::uint64_t last_bit(const Segment& seg, std::uint64_t t) {
    const std::uint64_t odd = t % 2 ? t : t - 1;
    return (odd - 1) / 2 - seg.first_index;
}

}  // namespace

std::uint64_t PrimeTable::prefix_count(std::uint64_t y) const {
    if (y > limit_)
        throw ContractError("prefix_count(" + std::to_string(y) + ") beyond table limit " + std::to_string(limit_));
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), y) - primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& cfg) {
    check_limit(limit, cfg);
    // pi(y) < 1.25506 y / log y for y > 1
    const double estimate =
        limit < 17 ? 8.0 : 1.25506 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    if (estimate * sizeof(std::uint64_t) > static_cast<double>(cfg.memory_budget))
        throw ResourceError("prime table up to " + std::to_string(limit) + " exceeds memory budget of " +
                            std::to_string(cfg.memory_budget) + " bytes");
    std::vector<std::uint64_t> primes;
    primes.reserve(static_cast<std::size_t>(estimate) + 1);
    if (limit >= 2) primes.push_back(2);
    OddSegmentSieve sieve(limit, cfg.segment_entries);
    Segment seg;
    for (std::size_t k = 0; k < sieve.segment_count(); ++k) {
        sieve.sieve(k, seg);
        seg.for_each_prime([&](std::uint64_t p) { primes.push_back(p); });
    }
    return PrimeTable(limit, std::move(primes));
}

ThresholdBatch::ThresholdBatch(std::vector<Rational> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].num() < 0) throw ContractError("negative threshold " + values_[i].str());
        if (i > 0 && values_[i] < values_[i - 1])
            throw ContractError("threshold batch is not sorted ascending at position " + std::to_string(i));
    }
}

std::vector<std::uint64_t> prime_count_batch(std::uint64_t x_max, const ThresholdBatch& batch,
                                             const SieveConfig& cfg) {
    check_limit(x_max, cfg);
    const auto floors = floors_of(x_max, batch);
    std::vector<std::uint64_t> out(floors.size(), 0);
    if (floors.empty() || floors.back() < 2) return out;

    OddSegmentSieve sieve(floors.back(), cfg.segment_entries);
    const auto slices = slice_by_segment(sieve, floors);

    struct Partial {
        std::uint64_t total = 0;
        std::vector<std::uint64_t> through;
    };
    std::uint64_t base = 0;
    sweep_segments(
        sieve, cfg.threads,
        [&](const Segment& seg) {
            Partial r;
            const std::size_t k = sieve.segment_of(seg.first_value());
            for (std::size_t i = slices.begin[k]; i < slices.end[k]; ++i)
                r.through.push_back(seg.count_through(last_bit(seg, floors[i])));
            r.total = seg.count_all();
            return r;
        },
        [&](std::size_t k, Partial&& r) {
            for (std::size_t i = slices.begin[k]; i < slices.end[k]; ++i)
                out[i] = base + r.through[i - slices.begin[k]] + (floors[i] >= 2 ? 1 : 0);
            base += r.total;
        });
    return out;
}

std::uint64_t prime_count(const Rational& y, const SieveConfig& cfg) {
    const auto f = floor_nonneg(y);
    check_limit(f, cfg);
    return prime_count_batch(f, ThresholdBatch({Rational(static_cast<std::int64_t>(f))}), cfg).front();
}

std::vector<CharClassCount> prime_count_char_batch(std::uint64_t x_max, const ThresholdBatch& batch,
                                                   const QuadraticCharacter& chi, const SieveConfig& cfg) {
    chi.require_nonprincipal();
    check_limit(x_max, cfg);
    const auto floors = floors_of(x_max, batch);
    std::vector<CharClassCount> out(floors.size());
    if (floors.empty() || floors.back() < 2) return out;

    const auto values = chi.values();
    const std::uint64_t q = chi.modulus();
    auto bump = [](CharClassCount& c, int v) {
        if (v > 0) ++c.plus;
        else if (v < 0) ++c.minus;
        else ++c.zero;
    };
    CharClassCount two;
    bump(two, values[2 % q]);

    OddSegmentSieve sieve(floors.back(), cfg.segment_entries);
    const auto slices = slice_by_segment(sieve, floors);

    struct Partial {
        CharClassCount total;
        std::vector<CharClassCount> through;
    };
    CharClassCount base = two;
    sweep_segments(
        sieve, cfg.threads,
        [&](const Segment& seg) {
            Partial r;
            const std::size_t k = sieve.segment_of(seg.first_value());
            std::size_t i = slices.begin[k];
            const std::size_t end = slices.end[k];
            seg.for_each_prime([&](std::uint64_t p) {
                while (i < end && floors[i] < p) {
                    r.through.push_back(r.total);
                    ++i;
                }
                bump(r.total, values[p % q]);
            });
            for (; i < end; ++i) r.through.push_back(r.total);
            return r;
        },
        [&](std::size_t k, Partial&& r) {
            const CharClassCount start = base;
            for (std::size_t i = slices.begin[k]; i < slices.end[k]; ++i) {
                const auto& t = r.through[i - slices.begin[k]];
                out[i] = {start.plus + t.plus, start.minus + t.minus, start.zero + t.zero};
            }
            base.plus += r.total.plus;
            base.minus += r.total.minus;
            base.zero += r.total.zero;
        });
    // thresholds in [2, 3) see only the prime 2, already included in base
    for (std::size_t i = 0; i < floors.size() && floors[i] < 3; ++i) out[i] = floors[i] >= 2 ? two : CharClassCount{};
    return out;
}

CharClassCount prime_count_char(const Rational& y, const QuadraticCharacter& chi, const SieveConfig& cfg) {
    const auto f = floor_nonneg(y);
    check_limit(f, cfg);
    return prime_count_char_batch(f, ThresholdBatch({Rational(static_cast<std::int64_t>(f))}), chi, cfg).front();
}

std::vector<std::uint8_t> prime_flags(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
    if (hi < lo) return {};
    check_limit(hi, cfg);
    if (hi - lo + 1 > cfg.memory_budget)
        throw ResourceError("primality range of " + std::to_string(hi - lo + 1) + " entries exceeds memory budget");
    std::vector<std::uint8_t> flags(hi - lo + 1, 1);
    for (std::uint64_t n = lo; n < 2 && n <= hi; ++n) flags[n - lo] = 0;
    const auto base = sieve_primes(isqrt(hi), cfg);
    for (std::uint64_t p : base.primes()) {
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= hi; m += p) flags[m - lo] = 0;
    }
    return flags;
}

double short_interval_variance(std::uint64_t x, std::uint64_t h, const SieveConfig& cfg) {
    if (x < 4) throw DomainError("short_interval_variance needs x >= 4");
    if (h == 0) return 0.0;
    // flags cover (x, 2x - 1 + h]
    const std::uint64_t lo = x + 1;
    const std::uint64_t hi = 2 * x - 1 + h;
    const auto flags = prime_flags(lo, hi, cfg);
    auto is_prime = [&](std::uint64_t n) { return flags[n - lo] != 0; };

    std::int64_t window = 0;  // primes in (t, t + h]
    for (std::uint64_t n = x + 1; n <= x + h; ++n) window += is_prime(n);
    long double acc = 0.0L;
    const long double hl = static_cast<long double>(h);
    for (std::uint64_t t = x; t < 2 * x; ++t) {
        const long double dev = static_cast<long double>(window) - hl / std::log(static_cast<long double>(t));
        acc += dev * dev;
        if (t + 1 < 2 * x) window += is_prime(t + 1 + h) - is_prime(t + 1);
    }
    return static_cast<double>(acc);
}

double short_interval_envelope(std::uint64_t x, std::uint64_t h) {
    const double lx = std::log(static_cast<double>(x));
    const double ratio = std::log(lx) / lx;
    const double hd = static_cast<double>(h);
    return static_cast<double>(x) * hd * hd / (lx * lx) * ratio * ratio;
}

}  // namespace rsacount
