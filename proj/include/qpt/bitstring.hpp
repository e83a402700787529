#ifndef QPT_BITSTRING_HPP
#define QPT_BITSTRING_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpt {

/**
 * Fixed-length vector over F_2, packed 64 coordinates per word.
 *
 * Index convention (global to the project): coordinate j of a vector equals
 * bit j of its integer value, i.e. value = sum_j bits[j] * 2^j.  Literal text
 * for vectors ("011", an A-set line, a measured z) is written as a binary
 * numeral, most significant coordinate first, so parse_msb_first("01") is the
 * vector with coordinate 0 set.  Truth tables use the opposite, sequential
 * order (position 0 leftmost); see BooleanFunction.
 */
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t length) : len_(length), words_(word_count(length), 0) {}

    static BitString from_value(std::size_t length, std::uint64_t value);
    static BitString parse_msb_first(std::string_view text);   // numeral style
    static BitString parse_lsb_first(std::string_view text);   // sequence style

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
    void set(std::size_t j, bool v) {
        const std::uint64_t m = 1ULL << (j & 63);
        if (v) words_[j >> 6] |= m; else words_[j >> 6] &= ~m;
    }
    void flip(std::size_t j) { words_[j >> 6] ^= 1ULL << (j & 63); }

    bool is_zero() const;
    std::size_t popcount() const;
    // Smallest set coordinate, or nullopt for the zero vector.
    std::optional<std::size_t> leading_index() const;

    // Integer value; requires size() <= 64.
    std::uint64_t value() const;

    std::string msb_first() const;
    std::string lsb_first() const;

    BitString& operator^=(const BitString& other);
    friend BitString operator^(BitString a, const BitString& b) { a ^= b; return a; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

    // Hamming weight of a XOR b; lengths must match.
    static std::size_t hamming(const BitString& a, const BitString& b);
    // <a, b> over F_2 (parity of the AND); lengths must match.
    static int inner_product(const BitString& a, const BitString& b);

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& mutable_words() { return words_; }

private:
    static std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace qpt

#endif
