#include "bdindex/bd_index.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "bdindex/lce.hpp"

namespace bdindex {

namespace {

constexpr char magic[4] = {'B', 'D', 'I', 'X'};
constexpr std::uint32_t format_version = 1;
constexpr std::uint32_t grid_version = 1;

void put_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}
void put_u32(std::ostream& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.put(static_cast<char>((v >> (8 * b)) & 0xff));
}
void put_u64(std::ostream& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.put(static_cast<char>((v >> (8 * b)) & 0xff));
}
std::uint8_t get_u8(std::istream& in) {
    const int c = in.get();
    if (c == EOF) throw std::runtime_error("truncated index file");
    return static_cast<std::uint8_t>(c);
}
std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(get_u8(in)) << (8 * b);
    return v;
}
std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(get_u8(in)) << (8 * b);
    return v;
}

void check_anchor_set(const Text& text, const AnchorSet& anchors) {
    if (anchors.n != text.size())
        throw std::invalid_argument("anchor set does not match text");
    if (anchors.positions.empty())
        throw std::invalid_argument("empty anchor set");
    Pos prev = 0;
    for (Pos a : anchors.positions) {
        if (a <= prev || a + anchors.scheme.r > anchors.n)
            throw std::invalid_argument("invalid anchor positions");
        prev = a;
    }
}

} // namespace

BdIndex BdIndex::build_full(const Text& text, const AnchorSet& anchors,
                            bool with_grid) {
    check_anchor_set(text, anchors);
    BdIndex ix;
    ix.scheme_ = anchors.scheme;
    ix.n_ = text.size();
    const auto& pos = anchors.positions;
    const auto member = [&](Pos p) {
        return std::binary_search(pos.begin(), pos.end(), p);
    };
    const std::uint64_t inf = ~0ull;
    {
        const LceIndex full(text.bytes());
        std::uint64_t run = inf;
        for (std::size_t t = 1; t <= ix.n_; ++t) {
            if (t > 1) run = std::min(run, full.lcp_entry(t));
            const Pos p = full.sa_at(t);
            if (!member(p)) continue;
            ix.rlcp_.push_back(ix.rsa_.empty() ? 0 : run);
            ix.rsa_.push_back(p);
            run = inf;
        }
    }
    {
        const Text rev = reverse(text);
        const LceIndex full(rev.bytes());
        std::uint64_t run = inf;
        for (std::size_t t = 1; t <= ix.n_; ++t) {
            if (t > 1) run = std::min(run, full.lcp_entry(t));
            const Pos p = ix.n_ - full.sa_at(t) + 1; // anchor whose prefix ends here
            if (!member(p)) continue;
            ix.llcp_.push_back(ix.lsa_.empty() ? 0 : run);
            ix.lsa_.push_back(p);
            run = inf;
        }
    }
    if (with_grid) ix.build_grid();
    ix.finish();
    return ix;
}

BdIndex BdIndex::build_sparse(const Text& text, const AnchorSet& anchors,
                              const KrContext& kr, bool with_grid,
                              BuildStats* stats) {
    check_anchor_set(text, anchors);
    if (kr.data() != text.data() || kr.n() != text.size())
        throw std::invalid_argument("fingerprint context not over this text");
    BdIndex ix;
    ix.scheme_ = anchors.scheme;
    ix.n_ = text.size();
    const std::uint64_t n = ix.n_;

    ix.rsa_ = anchors.positions;
    std::sort(ix.rsa_.begin(), ix.rsa_.end(), [&](Pos a, Pos b) {
        const std::uint64_t cap = std::min(n - a + 1, n - b + 1);
        const std::uint64_t e = kr_lce(kr, a, kr, b, cap);
        if (e == cap) return a > b; // shorter suffix is a prefix of the other
        return text.at(a + e) < text.at(b + e);
    });
    ix.rlcp_.resize(ix.rsa_.size(), 0);
    for (std::size_t t = 1; t < ix.rsa_.size(); ++t) {
        const Pos a = ix.rsa_[t - 1], b = ix.rsa_[t];
        ix.rlcp_[t] = kr_lce(kr, a, kr, b, std::min(n - a + 1, n - b + 1));
    }

    const Text rev = reverse(text);
    const KrContext krr(rev.bytes(), kr.seed(), kr.stride());
    // rev(S[1..a]) starts at n - a + 1 in reverse(S)
    ix.lsa_ = anchors.positions;
    std::sort(ix.lsa_.begin(), ix.lsa_.end(), [&](Pos a, Pos b) {
        const std::uint64_t cap = std::min(a, b);
        const std::uint64_t e = kr_lce(krr, n - a + 1, krr, n - b + 1, cap);
        if (e == cap) return a < b;
        return text.at(a - e) < text.at(b - e);
    });
    ix.llcp_.resize(ix.lsa_.size(), 0);
    for (std::size_t t = 1; t < ix.lsa_.size(); ++t) {
        const Pos a = ix.lsa_[t - 1], b = ix.lsa_[t];
        ix.llcp_[t] =
            kr_lce(krr, n - a + 1, krr, n - b + 1, std::min(a, b));
    }

    if (with_grid) ix.build_grid();
    ix.finish();
    if (stats)
        stats->peak_words = ix.words() + (n + 7) / 8 + krr.words();
    return ix;
}

void BdIndex::build_grid() {
    const std::size_t m = rsa_.size();
    std::unordered_map<std::uint64_t, std::uint64_t> y_of_anchor;
    y_of_anchor.reserve(m);
    for (std::size_t t = 0; t < m; ++t) y_of_anchor[lsa_[t]] = t + 1;
    std::vector<std::pair<Pos, Pos>> points(m);
    for (std::size_t t = 0; t < m; ++t)
        points[t] = {t + 1, y_of_anchor.at(rsa_[t])};
    grid_.emplace(points);
}

void BdIndex::finish() {
    rmq_r_ = BlockRmq<std::uint64_t>(std::span<const std::uint64_t>(rlcp_));
    rmq_l_ = BlockRmq<std::uint64_t>(std::span<const std::uint64_t>(llcp_));
}

std::uint64_t BdIndex::entry_len(Side side, std::size_t t) const {
    return side == Side::right ? n_ - rsa_[t] + 1 : lsa_[t];
}

std::uint8_t BdIndex::entry_at(const Text& text, Side side, std::size_t t,
                               std::uint64_t q) const {
    return side == Side::right ? text.at(rsa_[t] + q - 1)
                               : text.at(lsa_[t] - q + 1);
}

std::uint64_t BdIndex::entry_lcp(Side side, std::size_t a,
                                 std::size_t b) const {
    const auto& rmq = side == Side::right ? rmq_r_ : rmq_l_;
    return rmq.min(a + 1, b);
}

// One binary search of the Manber-Myers kind. State: L and R bracket the
// answer, l = lcp(entry_L, part), r = lcp(entry_R, part); every step costs
// one range-LCP probe, letters are only matched past max(l, r).
// upper=false finds the first entry >= part (a prefix match counts as >=),
// upper=true finds the first entry > part (a prefix match counts as <=).
std::size_t BdIndex::prefix_bound(const Text& text, Side side, byte_span part,
                                  bool upper) const {
    const std::int64_t m = static_cast<std::int64_t>(rsa_.size());
    std::int64_t L = -1, R = m;
    std::uint64_t l = 0, r = 0;
    while (R - L > 1) {
        const std::int64_t M = L + (R - L) / 2;
        std::uint64_t lam = 0;
        int ord = 0; // entry_M vs part: -1 below, 0 prefix match, +1 above
        bool extend = false;
        if (l >= r) {
            const std::uint64_t h =
                L >= 0 ? entry_lcp(side, static_cast<std::size_t>(L),
                                   static_cast<std::size_t>(M))
                       : 0;
            if (h < l) {
                ord = 1;
                lam = h;
            } else if (h > l) {
                lam = l;
                ord = l == part.size() ? 0 : -1;
            } else {
                lam = l;
                extend = true;
            }
        } else {
            const std::uint64_t h = entry_lcp(
                side, static_cast<std::size_t>(M), static_cast<std::size_t>(R));
            if (h < r) {
                ord = -1;
                lam = h;
            } else if (h > r) {
                lam = r;
                ord = r == part.size() ? 0 : 1;
            } else {
                lam = r;
                extend = true;
            }
        }
        if (extend) {
            const std::uint64_t len = entry_len(side, M);
            const std::uint64_t max_lam = std::min<std::uint64_t>(len, part.size());
            while (lam < max_lam &&
                   entry_at(text, side, M, lam + 1) == part[lam]) // part 0-based
                ++lam;
            if (lam == part.size())
                ord = 0;
            else if (lam == len)
                ord = -1; // entry is a proper prefix of part
            else
                ord = entry_at(text, side, M, lam + 1) < part[lam] ? -1 : 1;
        }
        const bool go_right = ord < 0 || (ord == 0 && upper);
        if (go_right) {
            L = M;
            l = lam;
        } else {
            R = M;
            r = lam;
        }
    }
    return static_cast<std::size_t>(R);
}

MatchRange BdIndex::range_search(const Text& text, Side side,
                                 byte_span part) const {
    if (text.size() != n_)
        throw std::invalid_argument("text does not match index");
    MatchRange out;
    out.lo = prefix_bound(text, side, part, false);
    out.hi = prefix_bound(text, side, part, true);
    return out;
}

std::vector<Pos> BdIndex::query(const Text& text, byte_span pattern) const {
    if (text.size() != n_)
        throw std::invalid_argument("text does not match index");
    if (pattern.size() < scheme_.ell)
        throw std::invalid_argument("pattern shorter than ell");
    const Pos j = pattern_anchor(pattern.first(scheme_.ell), scheme_);
    const std::uint64_t mlen = pattern.size();
    std::vector<Pos> out;
    if (mlen - j + 1 >= j) {
        const MatchRange rr =
            range_search(text, Side::right, pattern.subspan(j - 1));
        for (std::uint64_t t = rr.lo; t < rr.hi; ++t) {
            const Pos a = rsa_[t];
            if (a < j || a - j + mlen > n_) continue;
            const Pos o = a - j + 1;
            // left remainder pattern[1..j-1] against the text
            bool ok = true;
            for (Pos q = 0; q + 1 < j && ok; ++q)
                ok = text.at(o + q) == pattern[q];
            if (ok) out.push_back(o);
        }
    } else {
        std::vector<std::uint8_t> lpart(pattern.begin(), pattern.begin() + j);
        std::reverse(lpart.begin(), lpart.end());
        const MatchRange lr = range_search(text, Side::left, lpart);
        for (std::uint64_t t = lr.lo; t < lr.hi; ++t) {
            const Pos a = lsa_[t];
            if (a < j || a - j + mlen > n_) continue;
            const Pos o = a - j + 1;
            // right remainder pattern[j+1..] against the text
            bool ok = true;
            for (Pos q = j; q < mlen && ok; ++q)
                ok = text.at(o + q) == pattern[q];
            if (ok) out.push_back(o);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Pos> BdIndex::query_grid(const Text& text,
                                     byte_span pattern) const {
    if (!grid_) throw std::runtime_error("index built without grid");
    if (text.size() != n_)
        throw std::invalid_argument("text does not match index");
    if (pattern.size() < scheme_.ell)
        throw std::invalid_argument("pattern shorter than ell");
    const Pos j = pattern_anchor(pattern.first(scheme_.ell), scheme_);
    const MatchRange rr =
        range_search(text, Side::right, pattern.subspan(j - 1));
    if (rr.empty()) return {};
    std::vector<std::uint8_t> lpart(pattern.begin(), pattern.begin() + j);
    std::reverse(lpart.begin(), lpart.end());
    const MatchRange lr = range_search(text, Side::left, lpart);
    if (lr.empty()) return {};
    const auto pts = grid_->report(rr.lo + 1, rr.hi, lr.lo + 1, lr.hi);
    std::vector<Pos> out;
    out.reserve(pts.size());
    for (const auto& [x, y] : pts) out.push_back(rsa_[x - 1] - j + 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t BdIndex::words() const {
    std::uint64_t w = rsa_.size() + rlcp_.size() + lsa_.size() + llcp_.size();
    w += rmq_r_.words() + rmq_l_.words() + 8;
    if (grid_) w += grid_->words();
    return w;
}

void BdIndex::save(std::ostream& out) const {
    out.write(magic, 4);
    put_u32(out, format_version);
    put_u8(out, static_cast<std::uint8_t>(scheme_.kind));
    put_u64(out, scheme_.ell);
    put_u64(out, scheme_.r);
    put_u64(out, scheme_.seed);
    put_u64(out, kr_prime);
    put_u64(out, n_);
    put_u64(out, rsa_.size());
    for (std::uint64_t v : rsa_) put_u64(out, v);
    for (std::uint64_t v : rlcp_) put_u64(out, v);
    for (std::uint64_t v : lsa_) put_u64(out, v);
    for (std::uint64_t v : llcp_) put_u64(out, v);
    put_u8(out, grid_ ? 1 : 0);
    if (grid_) {
        put_u32(out, grid_version);
        put_u64(out, grid_->size());
        for (std::size_t t = 1; t <= grid_->size(); ++t)
            put_u64(out, grid_->y_of_x(t));
    }
    if (!out) throw std::runtime_error("index write failed");
}

BdIndex BdIndex::load(std::istream& in) {
    char got[4];
    in.read(got, 4);
    if (!in || !std::equal(got, got + 4, magic))
        throw std::runtime_error("not an index file");
    if (get_u32(in) != format_version)
        throw std::runtime_error("unsupported index version");
    BdIndex ix;
    const std::uint8_t kind = get_u8(in);
    if (kind > 1) throw std::runtime_error("unknown anchor kind");
    ix.scheme_.kind = static_cast<AnchorKind>(kind);
    ix.scheme_.ell = get_u64(in);
    ix.scheme_.r = get_u64(in);
    ix.scheme_.seed = get_u64(in);
    if (get_u64(in) != kr_prime)
        throw std::runtime_error("unsupported fingerprint prime");
    ix.n_ = get_u64(in);
    const std::uint64_t m = get_u64(in);
    if (m == 0 || m > ix.n_) throw std::runtime_error("corrupt index file");
    const auto read_arr = [&](std::vector<std::uint64_t>& v) {
        v.resize(m);
        for (auto& x : v) x = get_u64(in);
    };
    read_arr(ix.rsa_);
    read_arr(ix.rlcp_);
    read_arr(ix.lsa_);
    read_arr(ix.llcp_);
    const std::uint8_t has_grid = get_u8(in);
    if (has_grid) {
        if (get_u32(in) != grid_version)
            throw std::runtime_error("unsupported grid version");
        if (get_u64(in) != m) throw std::runtime_error("corrupt index file");
        std::vector<std::pair<Pos, Pos>> points(m);
        for (std::size_t t = 0; t < m; ++t) points[t] = {t + 1, get_u64(in)};
        ix.grid_.emplace(points);
    }
    ix.finish();
    return ix;
}

void BdIndex::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write index file: " + path);
    save(out);
}

BdIndex BdIndex::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open index file: " + path);
    return load(in);
}

} // namespace bdindex
