#include <doctest.h>

#include "bdindex/range2d.hpp"

#include "bdindex/common.hpp"

#include <algorithm>
#include <vector>

using namespace bdindex;

namespace {

std::vector<std::pair<Pos, Pos>> brute_report(
    const std::vector<std::pair<Pos, Pos>>& pts, Pos x_lo, Pos x_hi, Pos y_lo,
    Pos y_hi) {
    std::vector<std::pair<Pos, Pos>> out;
    for (const auto& p : pts) {
        if (p.first >= x_lo && p.first <= x_hi && p.second >= y_lo &&
            p.second <= y_hi) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Pos, Pos>> random_permutation_points(std::uint64_t m,
                                                           std::uint64_t seed) {
    std::vector<Pos> ys(m);
    for (Pos y = 1; y <= m; ++y) ys[y - 1] = y;
    SplitMix64 rng(seed);
    for (std::size_t i = m; i > 1; --i) {
        std::swap(ys[i - 1], ys[rng.next_below(i)]);
    }
    std::vector<std::pair<Pos, Pos>> pts(m);
    for (Pos x = 1; x <= m; ++x) pts[x - 1] = {x, ys[x - 1]};
    return pts;
}

void check_all_rectangles(const Grid2D& g,
                          const std::vector<std::pair<Pos, Pos>>& pts) {
    const Pos m = pts.size();
    for (Pos xl = 1; xl <= m; ++xl) {
        for (Pos xh = xl; xh <= m; ++xh) {
            for (Pos yl = 1; yl <= m; ++yl) {
                for (Pos yh = yl; yh <= m; ++yh) {
                    const auto want = brute_report(pts, xl, xh, yl, yh);
                    const auto got = g.report(xl, xh, yl, yh);
                    CHECK(got == want);
                    CHECK(g.count(xl, xh, yl, yh) == want.size());
                }
            }
        }
    }
}

} // namespace

TEST_CASE("single point grid") {
    const Grid2D g({{1, 1}});
    CHECK(g.size() == 1);
    CHECK(g.count(1, 1, 1, 1) == 1);
    CHECK(g.report(1, 1, 1, 1) ==
          std::vector<std::pair<Pos, Pos>>{{1, 1}});
    CHECK(g.count(2, 2, 1, 1) == 0);
}

TEST_CASE("identity and reversal permutations") {
    std::vector<std::pair<Pos, Pos>> idn, rev;
    for (Pos x = 1; x <= 8; ++x) {
        idn.push_back({x, x});
        rev.push_back({x, 9 - x});
    }
    check_all_rectangles(Grid2D(idn), idn);
    check_all_rectangles(Grid2D(rev), rev);
}

TEST_CASE("random permutations, exhaustive rectangles") {
    for (const std::uint64_t m : {2ull, 3ull, 5ull, 9ull, 17ull}) {
        const auto pts = random_permutation_points(m, m);
        check_all_rectangles(Grid2D(pts), pts);
    }
}

TEST_CASE("random permutations, sampled rectangles") {
    for (const std::uint64_t m : {64ull, 257ull, 1000ull}) {
        const auto pts = random_permutation_points(m, 3 * m);
        const Grid2D g(pts);
        SplitMix64 rng(m);
        for (int it = 0; it < 300; ++it) {
            Pos xl = 1 + rng.next_below(m), xh = 1 + rng.next_below(m);
            Pos yl = 1 + rng.next_below(m), yh = 1 + rng.next_below(m);
            if (xl > xh) std::swap(xl, xh);
            if (yl > yh) std::swap(yl, yh);
            const auto want = brute_report(pts, xl, xh, yl, yh);
            CHECK(g.report(xl, xh, yl, yh) == want);
            CHECK(g.count(xl, xh, yl, yh) == want.size());
        }
        CHECK(g.count(1, m, 1, m) == m);
    }
}

TEST_CASE("report output is sorted by x") {
    const auto pts = random_permutation_points(200, 11);
    const Grid2D g(pts);
    const auto got = g.report(20, 180, 1, 200);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(got.size() == 161);
}

TEST_CASE("ranges are clamped and may be empty") {
    const auto pts = random_permutation_points(16, 7);
    const Grid2D g(pts);
    CHECK(g.count(1, 1000, 1, 1000) == 16);
    CHECK(g.report(5, 4, 1, 16).empty());
    CHECK(g.report(1, 16, 9, 2).empty());
    CHECK(g.count(17, 20, 1, 16) == 0);
    CHECK(g.count(0, 16, 0, 16) == 16);
}

TEST_CASE("coordinate maps round-trip") {
    const auto pts = random_permutation_points(50, 9);
    const Grid2D g(pts);
    for (const auto& [x, y] : pts) {
        CHECK(g.y_of_x(x) == y);
        CHECK(g.x_of_y(y) == x);
    }
}

TEST_CASE("constructor rejects malformed point sets") {
    CHECK_THROWS_WITH_AS(Grid2D({}), "empty grid", std::invalid_argument);
    CHECK_THROWS_WITH_AS(Grid2D({{1, 1}, {2, 1}}),
                         "grid coordinates not a permutation",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Grid2D({{1, 1}, {1, 2}}),
                         "grid coordinates not a permutation",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Grid2D({{1, 3}, {2, 1}}), "grid point out of range",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Grid2D({{0, 1}, {2, 2}}), "grid point out of range",
                         std::invalid_argument);
}
