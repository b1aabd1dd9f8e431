#pragma once

#include <compare>
#include <utility>
#include <vector>

#include "bdindex/common.hpp"
#include "bdindex/rmq.hpp"

namespace bdindex {

// 0-based suffix array by prefix doubling with radix passes, O(m log m).
std::vector<std::uint32_t> build_suffix_array(byte_span s);

// Kasai: lcp[t] = LCP(suffixes sa[t-1], sa[t]), lcp[0] = 0.
std::vector<std::uint32_t> lcp_from_suffix_array(
    byte_span s, const std::vector<std::uint32_t>& sa);

// Suffix array + LCP + RMQ over one byte fragment: lcp of two suffixes in
// O(1)-ish. Non-owning view; the fragment must outlive the index. Movable,
// not copyable (the RMQ references the stored LCP array).
class LceIndex {
public:
    explicit LceIndex(byte_span s);

    LceIndex(const LceIndex&) = delete;
    LceIndex& operator=(const LceIndex&) = delete;
    LceIndex(LceIndex&&) = default;
    LceIndex& operator=(LceIndex&&) = default;

    std::size_t size() const { return s_.size(); }
    byte_span fragment() const { return s_; }

    Pos sa_at(std::size_t t) const { return sa_[t - 1] + 1; }   // t in [1, m]
    std::size_t rank_of(Pos i) const { return rank_[i - 1] + 1; }
    std::uint64_t lcp_entry(std::size_t t) const { return lcp_[t - 1]; }

    // LCP of suffixes s[i..m], s[j..m]; 1-based
    std::uint64_t lcp(Pos i, Pos j) const;

    std::uint64_t words() const;

private:
    byte_span s_;
    std::vector<std::uint32_t> sa_, rank_, lcp_;
    BlockRmq<std::uint32_t> rmq_;
};

// Order of rot_i(W) vs rot_j(W) over a window of length len. Decided by at
// most three lcp probes and three letter probes, matching the three legs a
// rotation splits into against the other:
//   leg 1: W[i..] vs W[j..]        (j's tail runs out first)
//   leg 2: W[i+c..] vs W[1..]      (i's tail vs j's wrapped head)
//   leg 3: W[1..] vs W[d+1..]      (both wrapped; at most i-1 letters left)
// lcp(x, y) must return the LCP of window suffixes x, y; at(x) the letter.
template <class LcpFn, class AtFn>
std::strong_ordering compare_rotations_with(std::size_t len, Pos i, Pos j,
                                            LcpFn&& lcp, AtFn&& at) {
    if (i == j) return std::strong_ordering::equal;
    if (i > j) {
        const auto r = compare_rotations_with(len, j, i, lcp, at);
        return 0 <=> r;
    }
    const Pos d = j - i;
    const std::uint64_t c1 = len - j + 1;
    const std::uint64_t l1 = lcp(i, j);
    if (l1 < c1) return at(i + l1) <=> at(j + l1);
    const std::uint64_t l2 = std::min<std::uint64_t>(lcp(i + c1, 1), d);
    if (l2 < d) return at(i + c1 + l2) <=> at(1 + l2);
    if (i == 1) return std::strong_ordering::equal;
    const std::uint64_t c3 = i - 1;
    const std::uint64_t l3 = std::min<std::uint64_t>(lcp(1, d + 1), c3);
    if (l3 < c3) return at(1 + l3) <=> at(d + 1 + l3);
    return std::strong_ordering::equal;
}

// Rotations of the whole indexed fragment.
std::strong_ordering compare_rotations(const LceIndex& idx, Pos i, Pos j);

// Rotations of the window fragment[win_start .. win_start+len-1]; the
// index may cover a longer fragment, LCPs are clipped to the window.
std::strong_ordering compare_rotations_in_window(const LceIndex& idx,
                                                 Pos win_start,
                                                 std::size_t len, Pos i,
                                                 Pos j);

} // namespace bdindex
