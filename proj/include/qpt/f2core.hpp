#ifndef QPT_F2CORE_HPP
#define QPT_F2CORE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qpt/bitstring.hpp"
#include "qpt/rng.hpp"

namespace qpt {

/// <a, b> over F_2. Lengths must match.
int inner_product(const BitString& a, const BitString& b);

/**
 * Truth table of f : {0,1}^n -> {0,1}, packed in a BitString of length 2^n.
 * Table coordinate p holds f at the input whose integer value is p.
 */
class BooleanFunction {
public:
    BooleanFunction(int domain_bits, BitString table);
    static BooleanFunction zero(int domain_bits);
    static BooleanFunction random(int domain_bits, Rng& rng);

    int domain_bits() const { return n_; }
    std::size_t size() const { return table_.size(); }   // N = 2^n

    bool at(std::size_t position) const { return table_.get(position); }
    void set(std::size_t position, bool v) { table_.set(position, v); }
    bool operator()(const BitString& x) const { return table_.get(x.value()); }

    const BitString& table() const { return table_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

    /**
     * Text format: first line "n=<int>", second line either 2^n characters
     * over {0,1} in position order (position 0 first) or "0x" + hex digits,
     * most significant nibble first (so position 0 is the top bit of the
     * first digit; hex requires 2^n divisible by 4).
     */
    static BooleanFunction load(std::istream& in);
    static BooleanFunction load_file(const std::string& path);
    void save(std::ostream& out, bool hex = false) const;
    std::string table_string() const { return table_.lsb_first(); }

private:
    int n_;
    BitString table_;
};

/**
 * Basis of a subspace of {0,1}^n kept in reduced echelon form: leading
 * (minimum) set coordinates are pairwise distinct, every vector is zero at
 * the other vectors' leading coordinates, and vectors are ordered by leading
 * coordinate.  The representation is canonical per subspace.
 */
class Basis {
public:
    explicit Basis(std::size_t ambient) : n_(ambient) {}

    std::size_t ambient() const { return n_; }
    std::size_t dimension() const { return vectors_.size(); }
    const std::vector<BitString>& vectors() const { return vectors_; }
    const std::vector<std::size_t>& leading() const { return leading_; }

    /// Eliminates the basis' leading coordinates from v.
    BitString reduce(BitString v) const;
    /// True iff v lies in the span.
    bool contains(const BitString& v) const { return reduce(v).is_zero(); }

    /**
     * Extends the basis by v if v is independent of it; returns false (and
     * leaves the basis untouched) if v is dependent.  Reduced form is
     * restored after every successful insertion.
     */
    bool try_extend(const BitString& v);

    bool in_reduced_form() const;
    std::string canonical_key() const;

    friend bool operator==(const Basis&, const Basis&) = default;

private:
    std::size_t n_;
    std::vector<BitString> vectors_;
    std::vector<std::size_t> leading_;
};

/**
 * Hadamard codeword of y: the string of length n = 2^{|y|} whose position-i
 * bit is <y, i> with i read as a |y|-bit vector (coordinate j = bit j of i).
 */
BitString hadamard_encode(const BitString& y);

/// Basis of {z : <z, v> = 0 for all v in vectors}; dimension n - rank.
Basis orthogonal_space(std::span<const BitString> vectors, std::size_t n);

/**
 * Exact Hamming distance from x to the nearest Hadamard codeword h(y) with
 * y in A, by enumeration of A.  A must be nonempty.  The scan over A is
 * OpenMP-parallel; distance_to_pa_serial is the plain reference kept for
 * testing and benchmarking.
 */
long distance_to_pa(const BitString& x, const std::vector<BitString>& A);
long distance_to_pa_serial(const BitString& x, const std::vector<BitString>& A);

/**
 * A property as a membership predicate plus an exact distance oracle and a
 * seeded member sampler.  distance(x) == 0 iff contains(x).
 */
struct PropertySpec {
    std::size_t n = 0;   // input length in bits
    std::function<bool(const BitString&)> contains;
    std::function<long(const BitString&)> distance;
    std::function<BitString(Rng&)> sample_member;
};

PropertySpec make_hadamard_property(std::vector<BitString> A, std::size_t n);

} // namespace qpt

#endif
