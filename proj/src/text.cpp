#include "bdindex/text.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>

namespace bdindex {

Text::Text(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty()) throw std::invalid_argument("empty text");
}

Text::Text(const std::string& s)
    : Text(std::vector<std::uint8_t>(s.begin(), s.end())) {}

Text Text::from_file(const std::string& path, bool strip_trailing_newline) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open text file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (strip_trailing_newline && !bytes.empty() && bytes.back() == '\n') {
        bytes.pop_back();
        if (!bytes.empty() && bytes.back() == '\r') bytes.pop_back();
    }
    if (bytes.empty()) throw std::runtime_error("empty text file: " + path);
    return Text(std::move(bytes));
}

std::uint8_t Text::at(Pos i) const {
    if (i < 1 || i > bytes_.size()) throw std::out_of_range("text position out of range");
    return bytes_[i - 1];
}

byte_span Text::fragment(Pos i, Pos j) const {
    if (i < 1 || j > bytes_.size() || i > j)
        throw std::out_of_range("text fragment out of range");
    return byte_span(bytes_.data() + (i - 1), j - i + 1);
}

unsigned Text::sigma() const {
    std::array<bool, 256> seen{};
    for (std::uint8_t b : bytes_) seen[b] = true;
    unsigned k = 0;
    for (bool s : seen) k += s;
    return k;
}

Text reverse(const Text& text) {
    std::vector<std::uint8_t> rev(text.bytes().begin(), text.bytes().end());
    std::reverse(rev.begin(), rev.end());
    return Text(std::move(rev));
}

std::vector<Pos> naive_find_all(byte_span s, byte_span pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    std::vector<Pos> out;
    if (pattern.size() > s.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= s.size(); ++i) {
        if (std::equal(pattern.begin(), pattern.end(), s.begin() + i))
            out.push_back(i + 1);
    }
    return out;
}

std::vector<Pos> naive_find_all(const Text& s, byte_span pattern) {
    return naive_find_all(s.bytes(), pattern);
}

std::strong_ordering compare_rotations_naive(byte_span window, Pos i, Pos j) {
    const std::size_t l = window.size();
    if (l == 0) throw std::invalid_argument("empty window");
    if (i < 1 || i > l || j < 1 || j > l)
        throw std::out_of_range("rotation start out of range");
    auto rot = [&](Pos x) {
        std::vector<std::uint8_t> r(window.begin() + (x - 1), window.end());
        r.insert(r.end(), window.begin(), window.begin() + (x - 1));
        return r;
    };
    const auto a = rot(i), b = rot(j);
    return std::lexicographical_compare_three_way(a.begin(), a.end(),
                                                  b.begin(), b.end());
}

} // namespace bdindex
