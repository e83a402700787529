#include "qpt/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace qpt {

BitString BitString::from_value(std::size_t length, std::uint64_t value) {
    if (length > 64) throw std::invalid_argument("from_value: length > 64");
    if (length < 64 && (value >> length) != 0)
        throw std::invalid_argument("from_value: value out of range for length");
    BitString b(length);
    if (length > 0) b.words_[0] = value;
    return b;
}

BitString BitString::parse_msb_first(std::string_view text) {
    BitString b(text.size());
    for (std::size_t p = 0; p < text.size(); ++p) {
        const char c = text[p];
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string: unexpected character '" + std::string(1, c) + "'");
        if (c == '1') b.set(text.size() - 1 - p, true);
    }
    return b;
}

BitString BitString::parse_lsb_first(std::string_view text) {
    BitString b(text.size());
    for (std::size_t p = 0; p < text.size(); ++p) {
        const char c = text[p];
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string: unexpected character '" + std::string(1, c) + "'");
        if (c == '1') b.set(p, true);
    }
    return b;
}

bool BitString::is_zero() const {
    for (std::uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

std::size_t BitString::popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::optional<std::size_t> BitString::leading_index() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
        if (words_[wi] != 0)
            return wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
    return std::nullopt;
}

std::uint64_t BitString::value() const {
    if (len_ > 64) throw std::logic_error("value(): vector longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

std::string BitString::msb_first() const {
    std::string s(len_, '0');
    for (std::size_t j = 0; j < len_; ++j)
        if (get(j)) s[len_ - 1 - j] = '1';
    return s;
}

std::string BitString::lsb_first() const {
    std::string s(len_, '0');
    for (std::size_t j = 0; j < len_; ++j)
        if (get(j)) s[j] = '1';
    return s;
}

BitString& BitString::operator^=(const BitString& other) {
    if (len_ != other.len_) throw std::invalid_argument("xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_) return a.len_ <=> b.len_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
        if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
}

std::size_t BitString::hamming(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_) throw std::invalid_argument("hamming: length mismatch");
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
    return total;
}

int BitString::inner_product(const BitString& a, const BitString& b) {
    if (a.len_ != b.len_) throw std::invalid_argument("inner_product: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
}

} // namespace qpt
