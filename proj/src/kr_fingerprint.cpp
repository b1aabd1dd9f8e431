#include "bdindex/kr_fingerprint.hpp"

#include <stdexcept>

namespace bdindex {

std::uint64_t kr_base_from_seed(std::uint64_t seed) {
    std::uint64_t x = splitmix64(seed);
    x %= kr_prime;
    // rho must be a nonzero residue; remap the two degenerate values
    if (x < 2) x += 2;
    return x;
}

KrContext::KrContext(byte_span s, std::uint64_t seed, std::uint64_t stride)
    : s_(s), seed_(seed), rho_(kr_base_from_seed(seed)), stride_(stride) {
    if (s_.empty()) throw std::invalid_argument("empty text");
    if (stride_ == 0) throw std::invalid_argument("stride must be positive");
    const std::size_t n = s_.size();
    const std::size_t hi = n / stride_;
    prefix_s_.reserve(hi + 1);
    pow_hi_.reserve(hi + 1);
    pow_lo_.reserve(stride_);
    pow_lo_.push_back(1);
    for (std::size_t q = 1; q < stride_; ++q)
        pow_lo_.push_back(kr_mul(pow_lo_.back(), rho_));
    const std::uint64_t rho_stride =
        kr_mul(pow_lo_.back(), rho_); // rho^stride
    pow_hi_.push_back(1);
    for (std::size_t q = 1; q <= hi; ++q)
        pow_hi_.push_back(kr_mul(pow_hi_.back(), rho_stride));
    std::uint64_t h = 0;
    prefix_s_.push_back(0);
    for (std::size_t t = 1; t <= n; ++t) {
        h = kr_add(kr_mul(h, rho_), s_[t - 1]);
        if (t % stride_ == 0) prefix_s_.push_back(h);
    }
}

KrContext::KrContext(const Text& text, std::uint64_t seed, std::uint64_t stride)
    : KrContext(text.bytes(), seed, stride) {}

std::uint64_t KrContext::pow(std::uint64_t e) const {
    return kr_mul(pow_hi_[e / stride_], pow_lo_[e % stride_]);
}

std::uint64_t KrContext::prefix(Pos t) const {
    std::uint64_t h = prefix_s_[t / stride_];
    for (Pos k = (t / stride_) * stride_ + 1; k <= t; ++k)
        h = kr_add(kr_mul(h, rho_), s_[k - 1]);
    return h;
}

std::uint64_t KrContext::fragment_hash(Pos i, Pos j) const {
    if (i < 1 || j > s_.size() || i > j)
        throw std::out_of_range("fragment out of range");
    return kr_sub(prefix(j), kr_mul(prefix(i - 1), pow(j - i + 1)));
}

std::uint64_t KrContext::words() const {
    return prefix_s_.size() + pow_hi_.size() + pow_lo_.size() + 4;
}

std::uint64_t kr_lce(const KrContext& a, Pos i, const KrContext& b, Pos j,
                     std::uint64_t cap) {
    if (a.seed() != b.seed())
        throw std::invalid_argument("incompatible fingerprint contexts");
    if (i < 1 || i > a.n() || j < 1 || j > b.n())
        throw std::out_of_range("lce start out of range");
    const std::uint64_t max_len =
        std::min<std::uint64_t>({cap, a.n() - i + 1, b.n() - j + 1});
    if (max_len == 0) return 0;
    if (a.fragment_hash(i, i + max_len - 1) ==
        b.fragment_hash(j, j + max_len - 1))
        return max_len;
    // invariant: fragments of length lo match, fragments of length hi differ
    std::uint64_t lo = 0, hi = max_len;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (a.fragment_hash(i, i + mid - 1) == b.fragment_hash(j, j + mid - 1))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace bdindex
