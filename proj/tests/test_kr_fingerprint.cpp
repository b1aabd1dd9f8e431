#include <doctest.h>

#include "bdindex/kr_fingerprint.hpp"

#include <map>

#include "support.hpp"

using namespace bdindex;
using testsupport::random_text;
using testsupport::to_bytes;

namespace {

std::uint64_t horner(byte_span s, std::uint64_t rho) {
    std::uint64_t h = 0;
    for (std::uint8_t b : s) h = kr_add(kr_mul(h, rho), b);
    return h;
}

} // namespace

TEST_CASE("modular arithmetic stays in range") {
    CHECK(kr_mul(kr_prime - 1, kr_prime - 1) < kr_prime);
    CHECK(kr_mul(kr_prime - 1, kr_prime - 1) == 1); // (-1)^2
    CHECK(kr_add(kr_prime - 1, 1) == 0);
    CHECK(kr_sub(0, 1) == kr_prime - 1);
    SplitMix64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        const std::uint64_t a = rng.next() % kr_prime, b = rng.next() % kr_prime;
        const auto m = kr_mul(a, b);
        CHECK(m < kr_prime);
        CHECK(m == static_cast<std::uint64_t>(
                       (static_cast<unsigned __int128>(a) * b) % kr_prime));
    }
}

TEST_CASE("fragment_hash matches the polynomial definition") {
    const Text t("ab");
    const KrContext kr(t, 42);
    const std::uint64_t rho = kr.base();
    CHECK(rho == kr_base_from_seed(42));
    CHECK(kr.fragment_hash(1, 1) == 'a');
    CHECK(kr.fragment_hash(2, 2) == 'b');
    CHECK(kr.fragment_hash(1, 2) == kr_add(kr_mul('a', rho), 'b'));
    CHECK_THROWS_AS(kr.fragment_hash(0, 1), std::out_of_range);
    CHECK_THROWS_AS(kr.fragment_hash(2, 1), std::out_of_range);
    CHECK_THROWS_AS(kr.fragment_hash(1, 3), std::out_of_range);
}

TEST_CASE("fragment_hash equals a direct Horner evaluation") {
    const Text t = random_text(9, 1000, 7);
    const KrContext kr(t, 123);
    SplitMix64 rng(17);
    for (int it = 0; it < 500; ++it) {
        const Pos i = 1 + rng.next_below(t.size());
        const Pos j = i + rng.next_below(t.size() - i + 1);
        CHECK(kr.fragment_hash(i, j) == horner(t.fragment(i, j), kr.base()));
    }
}

TEST_CASE("hashes are content-based and deterministic") {
    const Text t = random_text(21, 500, 4);
    const KrContext a(t, 7), b(t, 7), c(t, 8);
    CHECK(a.base() == b.base());
    CHECK(a.fragment_hash(3, 99) == b.fragment_hash(3, 99));
    CHECK(a.base() != c.base());
    // planted repeat: equal fragments hash equally at any offset
    auto bytes = testsupport::random_bytes(33, 600, 3);
    std::copy(bytes.begin() + 100, bytes.begin() + 180, bytes.begin() + 400);
    const Text p(std::move(bytes));
    const KrContext kp(p, 5);
    CHECK(kp.fragment_hash(101, 180) == kp.fragment_hash(401, 480));
}

TEST_CASE("hash homomorphism over concatenation") {
    const Text t = random_text(4, 800, 9);
    const KrContext kr(t, 99);
    SplitMix64 rng(1);
    for (int it = 0; it < 300; ++it) {
        const Pos i = 1 + rng.next_below(t.size() - 2);
        const Pos k = i + 1 + rng.next_below(t.size() - i);
        const Pos j = i + rng.next_below(k - i); // i <= j < k
        const auto whole = kr.fragment_hash(i, k);
        const auto lhs = kr.fragment_hash(i, j);
        const auto rhs = kr.fragment_hash(j + 1, k);
        CHECK(whole == kr_add(kr_mul(lhs, kr.pow(k - j)), rhs));
    }
}

TEST_CASE("sampled-stride context computes identical values") {
    const Text t = random_text(13, 700, 5);
    const KrContext full(t, 31);
    for (const std::uint64_t stride : {2ull, 7ull, 64ull, 1000ull}) {
        const KrContext sub(t, 31, stride);
        CHECK(sub.words() < full.words());
        SplitMix64 rng(stride);
        for (int it = 0; it < 200; ++it) {
            const Pos i = 1 + rng.next_below(t.size());
            const Pos j = i + rng.next_below(t.size() - i + 1);
            CHECK(sub.fragment_hash(i, j) == full.fragment_hash(i, j));
        }
        for (std::uint64_t e = 0; e <= 70; ++e) CHECK(sub.pow(e) == full.pow(e));
    }
}

TEST_CASE("distinct fragments get distinct fingerprints") {
    const Text t = random_text(2, 5000, 4);
    const KrContext kr(t, 77);
    std::map<std::uint64_t, Pos> first;
    const std::uint64_t len = 16;
    for (Pos i = 1; i + len - 1 <= t.size(); ++i) {
        const auto h = kr.fragment_hash(i, i + len - 1);
        const auto [it, fresh] = first.emplace(h, i);
        if (!fresh) {
            const auto a = t.fragment(it->second, it->second + len - 1);
            const auto b = t.fragment(i, i + len - 1);
            CHECK(std::equal(a.begin(), a.end(), b.begin()));
        }
    }
}

TEST_CASE("kr_lce") {
    const Text t = random_text(6, 1200, 3);
    const KrContext kr(t, 55);
    SUBCASE("matches a letter-by-letter scan") {
        SplitMix64 rng(8);
        for (int it = 0; it < 1000; ++it) {
            const Pos i = 1 + rng.next_below(t.size());
            const Pos j = 1 + rng.next_below(t.size());
            const std::uint64_t cap = rng.next_below(100);
            std::uint64_t want = 0;
            while (want < cap && i + want <= t.size() && j + want <= t.size() &&
                   t.at(i + want) == t.at(j + want))
                ++want;
            CHECK(kr_lce(kr, i, kr, j, cap) == want);
        }
    }
    SUBCASE("identical positions reach the cap") {
        CHECK(kr_lce(kr, 10, kr, 10, 50) == 50);
        CHECK(kr_lce(kr, 10, kr, 10, ~0ull) == t.size() - 9);
    }
    SUBCASE("distinct contexts must share the seed") {
        const Text u = random_text(14, 300, 3);
        const KrContext other(u, 56);
        CHECK_THROWS_WITH_AS(kr_lce(kr, 1, other, 1, 10),
                             "incompatible fingerprint contexts",
                             std::invalid_argument);
        const KrContext same(u, 55);
        CHECK_NOTHROW(kr_lce(kr, 1, same, 1, 10));
    }
    SUBCASE("cross-text extension") {
        auto bytes = testsupport::random_bytes(40, 200, 2);
        const Text a(bytes);
        std::reverse(bytes.begin(), bytes.end());
        const Text b(std::move(bytes));
        const KrContext ka(a, 9), kb(b, 9);
        for (Pos i = 1; i <= a.size(); i += 17) {
            const Pos jr = a.size() - i + 1;
            std::uint64_t want = 0;
            while (i + want <= a.size() && jr + want <= b.size() &&
                   a.at(i + want) == b.at(jr + want))
                ++want;
            CHECK(kr_lce(ka, i, kb, jr, ~0ull) == want);
        }
    }
}
