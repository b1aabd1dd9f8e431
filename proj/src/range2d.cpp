#include "bdindex/range2d.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bdindex {

BitRank::BitRank(std::vector<std::uint64_t> bits, std::size_t nbits)
    : bits_(std::move(bits)), nbits_(nbits) {
    bits_.push_back(0); // sentinel so rank at nbits stays in bounds
    cum_.resize(bits_.size());
    std::uint32_t acc = 0;
    for (std::size_t b = 0; b < bits_.size(); ++b) {
        cum_[b] = acc;
        acc += static_cast<std::uint32_t>(std::popcount(bits_[b]));
    }
}

Grid2D::Grid2D(const std::vector<std::pair<Pos, Pos>>& points) {
    const std::size_t m = points.size();
    if (m == 0) throw std::invalid_argument("empty grid");
    y_of_x_.assign(m, 0);
    x_of_y_.assign(m, 0);
    for (const auto& [x, y] : points) {
        if (x < 1 || x > m || y < 1 || y > m)
            throw std::invalid_argument("grid point out of range");
        if (y_of_x_[x - 1] != 0 || x_of_y_[y - 1] != 0)
            throw std::invalid_argument("grid coordinates not a permutation");
        y_of_x_[x - 1] = static_cast<std::uint32_t>(y);
        x_of_y_[y - 1] = static_cast<std::uint32_t>(x);
    }

    const std::size_t L = m > 1 ? std::bit_width(m - 1) : 0;
    const std::size_t nwords = (m + 63) / 64;
    std::vector<std::vector<std::uint64_t>> raw(
        L, std::vector<std::uint64_t>(nwords, 0));

    // depth-first stable partition by y bits, most significant first; each
    // node occupies [off, off + vals.size()) of its level
    std::vector<std::uint32_t> root(m);
    for (std::size_t t = 0; t < m; ++t) root[t] = y_of_x_[t] - 1;
    const auto rec = [&](auto&& self, std::size_t level, std::size_t off,
                         std::vector<std::uint32_t>& vals) -> void {
        if (level == L || vals.empty()) return;
        const std::uint32_t shift = static_cast<std::uint32_t>(L - 1 - level);
        std::vector<std::uint32_t> left, right;
        for (std::size_t t = 0; t < vals.size(); ++t) {
            if ((vals[t] >> shift) & 1) {
                raw[level][(off + t) >> 6] |= 1ull << ((off + t) & 63);
                right.push_back(vals[t]);
            } else {
                left.push_back(vals[t]);
            }
        }
        const std::size_t nl = left.size();
        vals.clear();
        vals.shrink_to_fit();
        self(self, level + 1, off, left);
        self(self, level + 1, off + nl, right);
    };
    rec(rec, 0, 0, root);

    levels_.reserve(L);
    for (auto& r : raw) levels_.emplace_back(std::move(r), m);
}

void Grid2D::descend(std::size_t level, std::size_t node_off,
                     std::size_t node_len, std::size_t a, std::size_t b,
                     std::uint64_t value_lo, std::uint64_t value_width,
                     std::uint64_t y_lo, std::uint64_t y_hi,
                     std::vector<Pos>* out, std::uint64_t* cnt) const {
    if (a >= b) return;
    if (value_lo > y_hi || value_lo + value_width - 1 < y_lo) return;
    if (level == levels_.size()) {
        if (cnt) *cnt += b - a;
        if (out)
            for (std::size_t t = a; t < b; ++t) out->push_back(value_lo + 1);
        return;
    }
    const BitRank& bv = levels_[level];
    const std::size_t zeros_before = bv.rank0(node_off);
    const std::size_t z_node = bv.rank0(node_off + node_len) - zeros_before;
    const std::size_t z_a = bv.rank0(a) - zeros_before;
    const std::size_t z_b = bv.rank0(b) - zeros_before;
    const std::uint64_t half = value_width / 2;
    descend(level + 1, node_off, z_node, node_off + z_a, node_off + z_b,
            value_lo, half, y_lo, y_hi, out, cnt);
    const std::size_t roff = node_off + z_node;
    descend(level + 1, roff, node_len - z_node, roff + (a - node_off - z_a),
            roff + (b - node_off - z_b), value_lo + half, half, y_lo, y_hi,
            out, cnt);
}

std::vector<std::pair<Pos, Pos>> Grid2D::report(Pos x_lo, Pos x_hi, Pos y_lo,
                                                Pos y_hi) const {
    const std::size_t m = size();
    std::vector<std::pair<Pos, Pos>> res;
    x_lo = std::max<Pos>(x_lo, 1);
    y_lo = std::max<Pos>(y_lo, 1);
    x_hi = std::min<Pos>(x_hi, m);
    y_hi = std::min<Pos>(y_hi, m);
    if (x_lo > x_hi || y_lo > y_hi) return res;
    std::vector<Pos> ys;
    const std::uint64_t width = 1ull << levels_.size();
    descend(0, 0, m, x_lo - 1, x_hi, 0, width, y_lo - 1, y_hi - 1, &ys,
            nullptr);
    res.reserve(ys.size());
    for (Pos y : ys) res.emplace_back(x_of_y(y), y);
    std::sort(res.begin(), res.end());
    return res;
}

std::uint64_t Grid2D::count(Pos x_lo, Pos x_hi, Pos y_lo, Pos y_hi) const {
    const std::size_t m = size();
    x_lo = std::max<Pos>(x_lo, 1);
    y_lo = std::max<Pos>(y_lo, 1);
    x_hi = std::min<Pos>(x_hi, m);
    y_hi = std::min<Pos>(y_hi, m);
    if (x_lo > x_hi || y_lo > y_hi) return 0;
    std::uint64_t cnt = 0;
    const std::uint64_t width = 1ull << levels_.size();
    descend(0, 0, m, x_lo - 1, x_hi, 0, width, y_lo - 1, y_hi - 1, nullptr,
            &cnt);
    return cnt;
}

std::uint64_t Grid2D::words() const {
    std::uint64_t w = (y_of_x_.size() + x_of_y_.size()) / 2 + 2;
    for (const auto& bv : levels_) w += bv.words();
    return w;
}

} // namespace bdindex
