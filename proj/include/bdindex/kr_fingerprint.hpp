#pragma once

#include <vector>

#include "bdindex/common.hpp"
#include "bdindex/text.hpp"

namespace bdindex {

// Arithmetic is mod p = 2^61 - 1 with 128-bit intermediates; all reductions
// branch-free folds, so fingerprints are identical across platforms.
inline constexpr std::uint64_t kr_prime = (1ULL << 61) - 1;

inline std::uint64_t kr_mod(unsigned __int128 x) {
    std::uint64_t r = static_cast<std::uint64_t>(x & kr_prime) +
                      static_cast<std::uint64_t>(x >> 61);
    r = (r & kr_prime) + (r >> 61);
    return r >= kr_prime ? r - kr_prime : r;
}

inline std::uint64_t kr_mul(std::uint64_t a, std::uint64_t b) {
    return kr_mod(static_cast<unsigned __int128>(a) * b);
}

inline std::uint64_t kr_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r >= kr_prime ? r - kr_prime : r;
}

inline std::uint64_t kr_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kr_prime - b;
}

// Base rho derived from the user seed; nonzero residue mod p.
std::uint64_t kr_base_from_seed(std::uint64_t seed);

// Fingerprint context over a byte sequence: phi(i, j) in O(1) via prefix
// hashes and powers of rho. With stride K > 1 the prefix table keeps every
// K-th entry only and phi costs O(K); values are identical for every stride.
// Non-owning: the underlying bytes must outlive the context.
class KrContext {
public:
    KrContext(byte_span s, std::uint64_t seed, std::uint64_t stride = 1);
    KrContext(const Text& text, std::uint64_t seed, std::uint64_t stride = 1);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t base() const { return rho_; }
    std::uint64_t prime() const { return kr_prime; }
    std::uint64_t stride() const { return stride_; }
    std::size_t n() const { return s_.size(); }
    const std::uint8_t* data() const { return s_.data(); }
    std::uint8_t at(Pos i) const { return s_[i - 1]; }

    // phi(i, j) = sum_{k=i..j} s[k] * rho^(j-k) mod p, 1 <= i <= j <= n
    std::uint64_t fragment_hash(Pos i, Pos j) const;

    std::uint64_t pow(std::uint64_t e) const;     // rho^e, e <= n

    std::uint64_t words() const;                  // 64-bit words held

private:
    std::uint64_t prefix(Pos t) const;            // phi(1, t), phi(1, 0) = 0

    byte_span s_;
    std::uint64_t seed_;
    std::uint64_t rho_;
    std::uint64_t stride_;
    std::vector<std::uint64_t> prefix_s_;         // prefix(q * stride)
    std::vector<std::uint64_t> pow_hi_;           // rho^(q * stride)
    std::vector<std::uint64_t> pow_lo_;           // rho^q, q < stride
};

// Longest common extension of a's suffix at i and b's suffix at j, capped at
// cap, by binary-searching fingerprint equality. Correct with high
// probability; both contexts must share seed and prime.
std::uint64_t kr_lce(const KrContext& a, Pos i, const KrContext& b, Pos j,
                     std::uint64_t cap);

} // namespace bdindex
