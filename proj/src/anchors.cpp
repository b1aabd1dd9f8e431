#include "bdindex/anchors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "bdindex/kr_fingerprint.hpp"
#include "bdindex/lce.hpp"
#include "bdindex/minimizers.hpp"

namespace bdindex {

namespace {

void check_scheme(const AnchorScheme& sc) {
    if (sc.ell < 2) throw std::invalid_argument("ell must be at least 2");
    if (sc.r > sc.ell - 1) throw std::invalid_argument("r out of range");
}

Pos wrap_successor(Pos c, std::uint64_t r, std::uint64_t ell) {
    const Pos s = c + r + 1;
    return s > ell ? s - ell : s; // s <= 2*ell here, so one fold suffices
}

// Leftmost of the tied candidates whose rotation (lex) or successor
// rotation (randomized) is minimal. `tied` holds window offsets, ascending.
template <class CmpFn>
Pos resolve_tied(std::span<const Pos> tied, const AnchorScheme& sc,
                 CmpFn&& cmp_rotations) {
    Pos champ = tied[0];
    if (sc.kind == AnchorKind::lex) {
        for (std::size_t t = 1; t < tied.size(); ++t)
            if (cmp_rotations(champ, tied[t]) > 0) champ = tied[t];
    } else {
        for (std::size_t t = 1; t < tied.size(); ++t) {
            const Pos a = wrap_successor(champ, sc.r, sc.ell);
            const Pos b = wrap_successor(tied[t], sc.r, sc.ell);
            if (cmp_rotations(a, b) > 0) champ = tied[t];
        }
    }
    return champ;
}

std::uint64_t horner_hash(byte_span s, std::uint64_t rho) {
    std::uint64_t h = 0;
    for (std::uint8_t b : s) h = kr_add(kr_mul(h, rho), b);
    return h;
}

// Windows owned by one block: local starts 1..wcount in fragment s.
// Anchors are appended as absolute text positions.
void process_block(byte_span s, Pos block_start, const AnchorScheme& sc,
                   std::uint64_t wcount, std::vector<Pos>& out,
                   std::uint64_t& block_words) {
    const std::uint64_t w = sc.ell - sc.r, k = sc.r + 1;
    std::optional<LceIndex> idx;
    std::optional<KrContext> kr;
    std::vector<std::uint64_t> keys;
    if (sc.kind == AnchorKind::lex) {
        idx.emplace(s);
        keys = lex_kmer_keys(*idx, k);
    } else {
        kr.emplace(s, sc.seed);
        keys = kr_kmer_keys(*kr, 1, s.size() - k + 1, k);
    }
    const auto cands = minimizers_by_key(keys, w);
    // LCE structure only needed to break ties; for the randomized kind most
    // windows have none, so build on first use
    const auto get_idx = [&]() -> const LceIndex& {
        if (!idx) idx.emplace(s);
        return *idx;
    };
    std::vector<Pos> tied;
    std::size_t lp = 0;
    for (Pos win = 1; win <= wcount; ++win) {
        while (lp < cands.size() && cands[lp] < win) ++lp;
        const Pos last = win + w - 1;
        std::uint64_t mk = ~0ull;
        for (std::size_t t = lp; t < cands.size() && cands[t] <= last; ++t)
            mk = std::min(mk, keys[cands[t] - 1]);
        tied.clear();
        for (std::size_t t = lp; t < cands.size() && cands[t] <= last; ++t)
            if (keys[cands[t] - 1] == mk) tied.push_back(cands[t] - win + 1);
        Pos j = tied[0];
        if (tied.size() > 1) {
            const LceIndex& li = get_idx();
            j = resolve_tied(tied, sc, [&](Pos a, Pos b) {
                const auto c =
                    compare_rotations_in_window(li, win, sc.ell, a, b);
                return c > 0 ? 1 : (c < 0 ? -1 : 0);
            });
        }
        out.push_back(block_start + win + j - 2);
    }
    std::uint64_t words = keys.size() + cands.size() + s.size() / 8;
    if (idx) words += idx->words();
    if (kr) words += kr->words();
    block_words = std::max(block_words, words);
}

} // namespace

std::uint64_t default_r(std::uint64_t ell, unsigned sigma) {
    if (ell < 2) throw std::invalid_argument("ell must be at least 2");
    if (sigma < 2) throw std::invalid_argument("alphabet too small");
    const double v = 4.0 * std::log2(static_cast<double>(ell)) /
                     std::log2(static_cast<double>(sigma));
    const auto r = static_cast<std::uint64_t>(std::ceil(v - 1e-9));
    return std::min<std::uint64_t>(r, ell - 1);
}

Pos naive_window_anchor(byte_span window, const AnchorScheme& sc) {
    check_scheme(sc);
    if (window.size() != sc.ell)
        throw std::invalid_argument("window length must equal ell");
    const std::uint64_t w = sc.ell - sc.r, k = sc.r + 1;
    std::vector<Pos> tied;
    if (sc.kind == AnchorKind::lex) {
        for (Pos c = 1; c <= w; ++c) tied.push_back(c);
    } else {
        const std::uint64_t rho = kr_base_from_seed(sc.seed);
        std::uint64_t mk = ~0ull;
        std::vector<std::uint64_t> keys(w);
        for (Pos c = 1; c <= w; ++c) {
            keys[c - 1] = horner_hash(window.subspan(c - 1, k), rho);
            mk = std::min(mk, keys[c - 1]);
        }
        for (Pos c = 1; c <= w; ++c)
            if (keys[c - 1] == mk) tied.push_back(c);
    }
    return resolve_tied(tied, sc, [&](Pos a, Pos b) {
        const auto c = compare_rotations_naive(window, a, b);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    });
}

AnchorSet naive_anchors(const Text& text, const AnchorScheme& sc) {
    check_scheme(sc);
    const std::uint64_t n = text.size();
    if (n < sc.ell) throw std::invalid_argument("text shorter than window");
    AnchorSet set{sc, n, {}};
    for (Pos i = 1; i + sc.ell - 1 <= n; ++i) {
        const Pos j = naive_window_anchor(text.fragment(i, i + sc.ell - 1), sc);
        const Pos abs = i + j - 1;
        if (set.positions.empty() || set.positions.back() != abs)
            set.positions.push_back(abs);
    }
    std::sort(set.positions.begin(), set.positions.end());
    set.positions.erase(
        std::unique(set.positions.begin(), set.positions.end()),
        set.positions.end());
    return set;
}

AnchorSet fast_anchors(const Text& text, const AnchorScheme& sc,
                       std::uint64_t block_len, unsigned threads,
                       AnchorStats* stats) {
    check_scheme(sc);
    const std::uint64_t n = text.size();
    if (n < sc.ell) throw std::invalid_argument("text shorter than window");
    if (block_len < 2 * sc.ell)
        throw std::invalid_argument("block must cover two windows");
    const std::uint64_t stride = block_len - sc.ell + 1;
    const std::uint64_t last_win = n - sc.ell + 1;
    std::vector<Pos> starts;
    for (Pos s = 1; s <= last_win; s += stride) starts.push_back(s);

    std::vector<std::vector<Pos>> parts(starts.size());
    std::vector<std::uint64_t> words(starts.size(), 0);
    const auto run = [&](std::size_t bi) {
        const Pos bs = starts[bi];
        const Pos be = std::min<Pos>(bs + block_len - 1, n);
        const std::uint64_t wcount = std::min(stride, last_win - bs + 1);
        process_block(text.fragment(bs, be), bs, sc, wcount, parts[bi],
                      words[bi]);
    };
    if (threads <= 1 || starts.size() <= 1) {
        for (std::size_t bi = 0; bi < starts.size(); ++bi) run(bi);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const unsigned nt = std::min<std::size_t>(threads, starts.size());
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&]() {
                for (std::size_t bi = next.fetch_add(1); bi < starts.size();
                     bi = next.fetch_add(1))
                    run(bi);
            });
        for (auto& th : pool) th.join();
    }

    AnchorSet set{sc, n, {}};
    for (const auto& p : parts)
        set.positions.insert(set.positions.end(), p.begin(), p.end());
    std::sort(set.positions.begin(), set.positions.end());
    set.positions.erase(
        std::unique(set.positions.begin(), set.positions.end()),
        set.positions.end());
    if (stats) {
        stats->blocks = starts.size();
        stats->peak_block_words = *std::max_element(words.begin(), words.end());
    }
    return set;
}

Pos pattern_anchor(byte_span window, const AnchorScheme& sc) {
    check_scheme(sc);
    if (window.size() != sc.ell)
        throw std::invalid_argument("window length must equal ell");
    const std::uint64_t w = sc.ell - sc.r, k = sc.r + 1;
    std::optional<LceIndex> idx;
    std::vector<std::uint64_t> keys;
    if (sc.kind == AnchorKind::lex) {
        idx.emplace(window);
        keys = lex_kmer_keys(*idx, k);
    } else {
        const KrContext kr(window, sc.seed);
        keys = kr_kmer_keys(kr, 1, w, k);
    }
    const auto tied = minimizers_by_key(keys, w);
    if (tied.size() == 1) return tied[0];
    if (!idx) idx.emplace(window);
    return resolve_tied(tied, sc, [&](Pos a, Pos b) {
        const auto c = compare_rotations(*idx, a, b);
        return c > 0 ? 1 : (c < 0 ? -1 : 0);
    });
}

} // namespace bdindex
