#pragma once

// Segmented odd-only sieve of Eratosthenes. Segment k holds the odd numbers
// n = 2i + 1 for i in [k*E, (k+1)*E), one bit each; a set bit means n is prime.
// Segments are sieved independently, so they can be handed to worker threads.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace rsacount {

struct Segment {
    std::uint64_t first_index = 0;  // odd index of bit 0
    std::uint64_t length = 0;       // number of valid bits
    std::vector<std::uint64_t> words;

    std::uint64_t first_value() const noexcept { return 2 * first_index + 1; }
    std::uint64_t last_value() const noexcept { return 2 * (first_index + length - 1) + 1; }
    bool test(std::uint64_t bit) const noexcept { return (words[bit >> 6] >> (bit & 63)) & 1u; }

    // Number of primes among bits [0, bit] inclusive.
    std::uint64_t count_through(std::uint64_t bit) const noexcept {
        std::uint64_t c = 0;
        const std::uint64_t full = bit >> 6;
        for (std::uint64_t w = 0; w < full; ++w) c += std::popcount(words[w]);
        const unsigned rem = static_cast<unsigned>(bit & 63);
        const std::uint64_t mask = rem == 63 ? ~0ull : ((1ull << (rem + 1)) - 1);
        return c + std::popcount(words[full] & mask);
    }
    std::uint64_t count_all() const noexcept {
        std::uint64_t c = 0;
        for (auto w : words) c += std::popcount(w);
        return c;
    }

    // Calls fn(p) for every prime in the segment, ascending.
    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                bits &= bits - 1;
                fn(2 * (first_index + (w << 6) + b) + 1);
            }
        }
    }
};

class OddSegmentSieve {
public:
    // Covers odd numbers up to limit (inclusive). segment_entries is rounded
    // up to a multiple of 64.
    OddSegmentSieve(std::uint64_t limit, std::uint64_t segment_entries);

    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t segment_count() const noexcept { return segments_; }
    std::uint64_t segment_entries() const noexcept { return entries_; }
    // Segment holding the odd number n (n odd, n <= limit).
    std::size_t segment_of(std::uint64_t n) const noexcept { return static_cast<std::size_t>(((n - 1) / 2) / entries_); }

    void sieve(std::size_t k, Segment& out) const;

private:
    std::uint64_t limit_;
    std::uint64_t entries_;
    std::uint64_t odd_count_;
    std::size_t segments_;
    std::vector<std::uint32_t> base_primes_;  // odd primes <= sqrt(limit)
};

// Sieves every segment and hands the result of work(segment) to
// merge(k, result) in ascending k. With threads > 1 segments are sieved in
// waves of `threads`; merge order, and therefore output, is unchanged.
template <class Work, class Merge>
void sweep_segments(const OddSegmentSieve& sieve, unsigned threads, Work&& work, Merge&& merge) {
    const std::size_t n = sieve.segment_count();
    if (threads <= 1 || n <= 1) {
        Segment seg;
        for (std::size_t k = 0; k < n; ++k) {
            sieve.sieve(k, seg);
            merge(k, work(seg));
        }
        return;
    }
    using Result = decltype(work(std::declval<const Segment&>()));
    std::vector<Segment> segs(threads);
    std::vector<Result> results(threads);
    for (std::size_t base = 0; base < n; base += threads) {
        const std::size_t wave = std::min<std::size_t>(threads, n - base);
        std::vector<std::thread> pool;
        pool.reserve(wave);
        for (std::size_t j = 0; j < wave; ++j) {
            pool.emplace_back([&, j] {
                sieve.sieve(base + j, segs[j]);
                results[j] = work(segs[j]);
            });
        }
        for (auto& t : pool) t.join();
        for (std::size_t j = 0; j < wave; ++j) merge(base + j, std::move(results[j]));
    }
}

}  // namespace rsacount
