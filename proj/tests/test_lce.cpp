#include <doctest.h>

#include "bdindex/lce.hpp"

#include "bdindex/rmq.hpp"
#include "bdindex/text.hpp"
#include "support.hpp"

using namespace bdindex;
using testsupport::naive_lcp;
using testsupport::random_text;
using testsupport::to_bytes;

TEST_CASE("suffix array on known strings") {
    const auto banana = to_bytes("banana");
    const LceIndex idx(byte_span{banana});
    const std::vector<Pos> want{6, 4, 2, 1, 5, 3};
    for (std::size_t t = 1; t <= 6; ++t) {
        CHECK(idx.sa_at(t) == want[t - 1]);
        CHECK(idx.rank_of(want[t - 1]) == t);
    }
    const auto aaa = to_bytes("aaa");
    const LceIndex ua(byte_span{aaa});
    CHECK(ua.sa_at(1) == 3);
    CHECK(ua.sa_at(2) == 2);
    CHECK(ua.sa_at(3) == 1);
}

TEST_CASE("suffix array equals enumerate-and-sort on random text") {
    for (const unsigned sigma : {2u, 3u, 26u}) {
        const Text t = random_text(100 + sigma, 500, sigma);
        const LceIndex idx(t.bytes());
        std::vector<Pos> all(t.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
        const auto want = testsupport::sort_by_suffix(t.bytes(), all);
        for (std::size_t k = 1; k <= want.size(); ++k)
            CHECK(idx.sa_at(k) == want[k - 1]);
    }
}

TEST_CASE("lcp array matches adjacent-suffix scans") {
    const Text t = random_text(3, 400, 2);
    const LceIndex idx(t.bytes());
    CHECK(idx.lcp_entry(1) == 0);
    for (std::size_t k = 2; k <= t.size(); ++k) {
        const Pos a = idx.sa_at(k - 1), b = idx.sa_at(k);
        CHECK(idx.lcp_entry(k) ==
              naive_lcp(t.fragment(a, t.size()), t.fragment(b, t.size())));
    }
}

TEST_CASE("lcp queries") {
    const auto banana = to_bytes("banana");
    const LceIndex idx(byte_span{banana});
    CHECK(idx.lcp(2, 4) == 3); // anana vs ana
    CHECK(idx.lcp(4, 2) == 3);
    CHECK(idx.lcp(1, 1) == 6);
    CHECK(idx.lcp(1, 2) == 0);
    CHECK_THROWS_AS(idx.lcp(0, 3), std::out_of_range);
    CHECK_THROWS_AS(idx.lcp(1, 7), std::out_of_range);

    const Text t = random_text(5, 600, 3);
    const LceIndex ridx(t.bytes());
    SplitMix64 rng(4);
    for (int it = 0; it < 500; ++it) {
        const Pos i = 1 + rng.next_below(t.size());
        const Pos j = 1 + rng.next_below(t.size());
        CHECK(ridx.lcp(i, j) ==
              naive_lcp(t.fragment(i, t.size()), t.fragment(j, t.size())));
    }
}

TEST_CASE("block rmq equals a linear scan") {
    SplitMix64 rng(12);
    for (const std::size_t n : {1ul, 5ul, 63ul, 64ul, 65ul, 129ul, 1000ul}) {
        std::vector<std::uint64_t> a(n);
        for (auto& v : a) v = rng.next_below(50);
        const BlockRmq<std::uint64_t> rmq{std::span<const std::uint64_t>(a)};
        for (int it = 0; it < 300; ++it) {
            std::size_t lo = rng.next_below(n), hi = rng.next_below(n);
            if (lo > hi) std::swap(lo, hi);
            CHECK(rmq.min(lo, hi) ==
                  *std::min_element(a.begin() + lo, a.begin() + hi + 1));
        }
    }
}

TEST_CASE("compare_rotations worked examples") {
    const auto w = to_bytes("aacaa");
    const LceIndex idx(byte_span{w});
    CHECK(compare_rotations(idx, 4, 1) == std::strong_ordering::less);
    CHECK(compare_rotations(idx, 1, 4) == std::strong_ordering::greater);
    CHECK(compare_rotations(idx, 2, 2) == std::strong_ordering::equal);
    CHECK_THROWS_AS(compare_rotations(idx, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(compare_rotations(idx, 1, 6), std::out_of_range);
}

TEST_CASE("compare_rotations directed split cases") {
    // decided while j's tail is still running
    const auto s1 = to_bytes("ab");
    CHECK(compare_rotations(LceIndex(byte_span{s1}), 1, 2) ==
          std::strong_ordering::less);
    // decided where i's tail meets j's wrapped head
    const auto s2 = to_bytes("aba");
    CHECK(compare_rotations(LceIndex(byte_span{s2}), 1, 3) ==
          std::strong_ordering::greater);
    // decided after both wrap
    const auto s3 = to_bytes("baaba");
    CHECK(compare_rotations(LceIndex(byte_span{s3}), 3, 5) ==
          std::strong_ordering::greater);
    // fully periodic: equal rotations at distance of the period
    const auto s4 = to_bytes("abab");
    CHECK(compare_rotations(LceIndex(byte_span{s4}), 1, 3) ==
          std::strong_ordering::equal);
    CHECK(compare_rotations(LceIndex(byte_span{s4}), 2, 4) ==
          std::strong_ordering::equal);
}

TEST_CASE("compare_rotations agrees with the oracle within probe budget") {
    for (std::size_t len = 1; len <= 8; ++len) {
        std::vector<std::uint8_t> w(len);
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
            for (std::size_t t = 0; t < len; ++t)
                w[t] = (mask >> t) & 1 ? 'b' : 'a';
            const LceIndex idx(byte_span{w});
            for (Pos i = 1; i <= len; ++i)
                for (Pos j = 1; j <= len; ++j) {
                    int lcp_probes = 0, letter_probes = 0;
                    const auto got = compare_rotations_with(
                        len, i, j,
                        [&](Pos x, Pos y) {
                            ++lcp_probes;
                            return idx.lcp(x, y);
                        },
                        [&](Pos x) {
                            ++letter_probes;
                            return w[x - 1];
                        });
                    CHECK(got == compare_rotations_naive(byte_span{w}, i, j));
                    CHECK(lcp_probes <= 3);
                    CHECK(letter_probes <= 3);
                }
        }
    }
}

TEST_CASE("compare_rotations_in_window clips to the window") {
    const Text t = random_text(31, 120, 2);
    const LceIndex idx(t.bytes());
    SplitMix64 rng(6);
    for (int it = 0; it < 60; ++it) {
        const std::size_t len = 2 + rng.next_below(12);
        const Pos ws = 1 + rng.next_below(t.size() - len + 1);
        const auto win = t.fragment(ws, ws + len - 1);
        for (Pos i = 1; i <= len; ++i)
            for (Pos j = 1; j <= len; ++j)
                CHECK(compare_rotations_in_window(idx, ws, len, i, j) ==
                      compare_rotations_naive(win, i, j));
    }
}
