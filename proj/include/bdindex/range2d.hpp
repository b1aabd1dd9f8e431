#pragma once

#include <bit>
#include <utility>
#include <vector>

#include "bdindex/common.hpp"

namespace bdindex {

// Bitvector with 64-bit blocks and per-block cumulative popcounts.
class BitRank {
public:
    BitRank() = default;
    explicit BitRank(std::vector<std::uint64_t> bits, std::size_t nbits);

    bool get(std::size_t i) const {
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }
    // zeros in [0, i)
    std::size_t rank0(std::size_t i) const {
        return i - rank1(i);
    }
    std::size_t rank1(std::size_t i) const {
        return cum_[i >> 6] +
               std::popcount(bits_[i >> 6] & ((i & 63) ? (~0ull >> (64 - (i & 63))) : 0));
    }
    std::size_t size() const { return nbits_; }
    std::uint64_t words() const { return bits_.size() + cum_.size() / 2 + 1; }

private:
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> cum_;
    std::size_t nbits_ = 0;
};

// n x n grid holding one point per column and per row: point (x, y_of_x[x]).
// Wavelet tree over the y-sequence in x-order, levelwise layout: per level
// one bitvector, each node a contiguous segment, children located by rank.
// report() returns the points inside [x_lo, x_hi] x [y_lo, y_hi] in
// ascending x. O((1 + occ) log n) per query.
class Grid2D {
public:
    // points: (x, y) pairs; the x's and the y's must each be a permutation
    // of 1..points.size()
    explicit Grid2D(const std::vector<std::pair<Pos, Pos>>& points);

    std::size_t size() const { return y_of_x_.size(); }
    Pos y_of_x(Pos x) const { return y_of_x_[x - 1]; }
    Pos x_of_y(Pos y) const { return x_of_y_[y - 1]; }

    std::vector<std::pair<Pos, Pos>> report(Pos x_lo, Pos x_hi, Pos y_lo,
                                            Pos y_hi) const;
    std::uint64_t count(Pos x_lo, Pos x_hi, Pos y_lo, Pos y_hi) const;

    std::uint64_t words() const;

private:
    void descend(std::size_t level, std::size_t node_off,
                 std::size_t node_len, std::size_t a, std::size_t b,
                 std::uint64_t value_lo, std::uint64_t value_width,
                 std::uint64_t y_lo, std::uint64_t y_hi,
                 std::vector<Pos>* out, std::uint64_t* cnt) const;

    std::vector<std::uint32_t> y_of_x_, x_of_y_;
    std::vector<BitRank> levels_;
};

} // namespace bdindex
