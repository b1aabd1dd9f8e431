#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bdindex/anchors.hpp"
#include "bdindex/kr_fingerprint.hpp"
#include "bdindex/range2d.hpp"
#include "bdindex/rmq.hpp"
#include "bdindex/text.hpp"

namespace bdindex {

enum class Side : std::uint8_t { right, left };

// Half-open interval of entry ranks, 0 <= lo <= hi <= |A|.
struct MatchRange {
    std::uint64_t lo = 0, hi = 0;
    bool empty() const { return lo >= hi; }
    std::uint64_t size() const { return hi - lo; }
};

struct BuildStats {
    std::uint64_t peak_words = 0; // working set beyond text and caller's kr
};

// Sampled suffix structure over the anchor positions of a text:
//   rsa: anchors ordered by the suffix S[a..n]      (right entries)
//   lsa: anchors ordered by the prefix rev(S[1..a]) (left entries)
//   rlcp/llcp: LCPs of neighboring entries, plus RMQs for range LCPs
// plus an optional rank-space grid pairing the two orders. Queries need the
// original text alongside; the index stores no text bytes.
class BdIndex {
public:
    BdIndex(const BdIndex&) = delete;
    BdIndex& operator=(const BdIndex&) = delete;
    BdIndex(BdIndex&&) = default;
    BdIndex& operator=(BdIndex&&) = default;

    // Via full suffix arrays of S and reverse(S), Theta(n) words transient.
    static BdIndex build_full(const Text& text, const AnchorSet& anchors,
                              bool with_grid = false);

    // Via comparison sort of the anchors with fingerprint LCEs, O(|A|) words
    // beyond text and contexts. kr must be a context over this text. Output
    // is identical to build_full.
    static BdIndex build_sparse(const Text& text, const AnchorSet& anchors,
                                const KrContext& kr, bool with_grid = false,
                                BuildStats* stats = nullptr);

    const AnchorScheme& scheme() const { return scheme_; }
    std::uint64_t n() const { return n_; }
    std::uint64_t anchor_count() const { return rsa_.size(); }
    const std::vector<std::uint64_t>& rsa() const { return rsa_; }
    const std::vector<std::uint64_t>& rlcp() const { return rlcp_; }
    const std::vector<std::uint64_t>& lsa() const { return lsa_; }
    const std::vector<std::uint64_t>& llcp() const { return llcp_; }
    bool has_grid() const { return grid_.has_value(); }
    const Grid2D& grid() const { return *grid_; }

    // Ranks of the entries having `part` as a prefix. Right entries read
    // S[a..n], left entries read rev(S[1..a]). LCP-steered binary search,
    // O(|part| + log |A|) letter probes.
    MatchRange range_search(const Text& text, Side side, byte_span part) const;

    // All occurrences of pattern (|pattern| >= ell), ascending. Anchors the
    // pattern, searches the longer of the two parts, verifies the other
    // against the text.
    std::vector<Pos> query(const Text& text, byte_span pattern) const;

    // Same result via a rectangle on the grid; no verification step.
    std::vector<Pos> query_grid(const Text& text, byte_span pattern) const;

    std::uint64_t words() const;

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static BdIndex load(std::istream& in);
    static BdIndex load_file(const std::string& path);

private:
    BdIndex() = default;

    void finish();                        // RMQs + grid from y permutation
    std::uint64_t entry_len(Side side, std::size_t t) const;
    std::uint8_t entry_at(const Text& text, Side side, std::size_t t,
                          std::uint64_t q) const;
    std::uint64_t entry_lcp(Side side, std::size_t a, std::size_t b) const;
    std::size_t prefix_bound(const Text& text, Side side, byte_span part,
                             bool upper) const;
    void build_grid();

    AnchorScheme scheme_;
    std::uint64_t n_ = 0;
    std::vector<std::uint64_t> rsa_, rlcp_, lsa_, llcp_;
    BlockRmq<std::uint64_t> rmq_r_, rmq_l_;
    std::optional<Grid2D> grid_;
};

} // namespace bdindex
