#pragma once

#include <compare>
#include <string>
#include <vector>

#include "bdindex/common.hpp"

namespace bdindex {

// Immutable byte string over alphabet {0..255}, positions 1..size().
class Text {
public:
    explicit Text(std::vector<std::uint8_t> bytes);
    explicit Text(const std::string& s);

    // Reads the file as raw bytes. strip_trailing_newline removes one final
    // '\n' (and a preceding '\r') if present.
    static Text from_file(const std::string& path, bool strip_trailing_newline);

    std::size_t size() const { return bytes_.size(); }
    std::uint8_t at(Pos i) const;                 // 1-based
    byte_span bytes() const { return byte_span(bytes_); }
    byte_span fragment(Pos i, Pos j) const;       // S[i..j], inclusive
    const std::uint8_t* data() const { return bytes_.data(); }
    unsigned sigma() const;                       // distinct byte values

private:
    std::vector<std::uint8_t> bytes_;
};

Text reverse(const Text& text);

// All starting positions i with S[i..i+|P|-1] = P, ascending. Oracle-grade
// scan, O(n * |P|).
std::vector<Pos> naive_find_all(byte_span s, byte_span pattern);
std::vector<Pos> naive_find_all(const Text& s, byte_span pattern);

// Order of rot_i(W) vs rot_j(W) where rot_x(W) = W[x..l] W[1..x-1],
// materializing both rotations. Oracle for the LCE-backed comparator.
std::strong_ordering compare_rotations_naive(byte_span window, Pos i, Pos j);

} // namespace bdindex
