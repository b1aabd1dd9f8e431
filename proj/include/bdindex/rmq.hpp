#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace bdindex {

// Range-minimum over a frozen array: minima of fixed-size blocks under a
// sparse table, in-block tails by scan. O(n / block) words on top of the
// input, queries O(block). The input array is not stored.
template <class T>
class BlockRmq {
public:
    static constexpr std::size_t block = 64;

    BlockRmq() = default;

    explicit BlockRmq(std::span<const T> a) : a_(a) {
        const std::size_t nb = (a.size() + block - 1) / block;
        if (nb == 0) return;
        table_.emplace_back();
        table_[0].resize(nb);
        for (std::size_t b = 0; b < nb; ++b) {
            T m = a[b * block];
            const std::size_t end = std::min(a.size(), (b + 1) * block);
            for (std::size_t t = b * block + 1; t < end; ++t)
                m = std::min(m, a[t]);
            table_[0][b] = m;
        }
        for (std::size_t k = 1; (1u << k) <= nb; ++k) {
            auto& row = table_.emplace_back();
            row.resize(nb - (1u << k) + 1);
            for (std::size_t b = 0; b < row.size(); ++b)
                row[b] = std::min(table_[k - 1][b],
                                  table_[k - 1][b + (1u << (k - 1))]);
        }
    }

    // min of a[lo..hi], inclusive, 0-based
    T min(std::size_t lo, std::size_t hi) const {
        const std::size_t bl = lo / block, bh = hi / block;
        if (bl == bh) return scan(lo, hi);
        T m = std::min(scan(lo, (bl + 1) * block - 1), scan(bh * block, hi));
        if (bl + 1 <= bh - 1) m = std::min(m, blocks_min(bl + 1, bh - 1));
        return m;
    }

    std::uint64_t words() const {
        std::uint64_t w = 0;
        for (const auto& row : table_) w += row.size() * sizeof(T) / 8;
        return w + 2;
    }

private:
    T scan(std::size_t lo, std::size_t hi) const {
        T m = a_[lo];
        for (std::size_t t = lo + 1; t <= hi; ++t) m = std::min(m, a_[t]);
        return m;
    }

    T blocks_min(std::size_t bl, std::size_t bh) const {
        const std::size_t k = std::bit_width(bh - bl + 1) - 1;
        return std::min(table_[k][bl], table_[k][bh - (1u << k) + 1]);
    }

    std::span<const T> a_;
    std::vector<std::vector<T>> table_;
};

} // namespace bdindex
