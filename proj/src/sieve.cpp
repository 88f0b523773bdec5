#include "sieve.hpp"

#include <algorithm>

#include "rational.hpp"

namespace rsacount {

OddSegmentSieve::OddSegmentSieve(std::uint64_t limit, std::uint64_t segment_entries)
    : limit_(limit),
      entries_(std::max<std::uint64_t>(64, (segment_entries + 63) / 64 * 64)),
      odd_count_((limit + 1) / 2),
      segments_(static_cast<std::size_t>((odd_count_ + entries_ - 1) / entries_)) {
    const std::uint64_t root = isqrt(limit);
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 3; i <= root; i += 2) {
        if (composite[i]) continue;
        base_primes_.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = true;
    }
}

void OddSegmentSieve::sieve(std::size_t k, Segment& out) const {
    const std::uint64_t lo_idx = static_cast<std::uint64_t>(k) * entries_;
    const std::uint64_t len = std::min(entries_, odd_count_ - lo_idx);
    out.first_index = lo_idx;
    out.length = len;
    out.words.assign((len + 63) / 64, ~0ull);
    if (len % 64) out.words.back() = (1ull << (len % 64)) - 1;

    const std::uint64_t lo = 2 * lo_idx + 1;
    const std::uint64_t hi = 2 * (lo_idx + len - 1) + 1;
    if (lo_idx == 0) out.words[0] &= ~1ull;  // 1 is not prime

    std::uint64_t* w = out.words.data();
    for (std::uint32_t p32 : base_primes_) {
        const std::uint64_t p = p32;
        const std::uint64_t sq = p * p;
        if (sq > hi) break;
        std::uint64_t start;
        if (sq >= lo) {
            start = sq;
        } else {
            std::uint64_t m = (lo + p - 1) / p;
            if (m % 2 == 0) ++m;
            start = m * p;
        }
        for (std::uint64_t i = (start - 1) / 2 - lo_idx; i < len; i += p) w[i >> 6] &= ~(1ull << (i & 63));
    }
}

}  // namespace rsacount
