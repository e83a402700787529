#include "qpt/f2core.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace qpt {

int inner_product(const BitString& a, const BitString& b) {
    return BitString::inner_product(a, b);
}

BooleanFunction::BooleanFunction(int domain_bits, BitString table) : n_(domain_bits), table_(std::move(table)) {
    if (n_ < 1) throw std::invalid_argument("BooleanFunction: need at least one domain bit");
    if (table_.size() != (std::size_t{1} << n_))
        throw std::invalid_argument("BooleanFunction: table length must be 2^n");
}

BooleanFunction BooleanFunction::zero(int domain_bits) {
    if (domain_bits < 1) throw std::invalid_argument("BooleanFunction: need at least one domain bit");
    return BooleanFunction(domain_bits, BitString(std::size_t{1} << domain_bits));
}

BooleanFunction BooleanFunction::random(int domain_bits, Rng& rng) {
    BooleanFunction f = zero(domain_bits);
    for (std::size_t p = 0; p < f.size(); ++p) f.set(p, rng.flip());
    return f;
}

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

BooleanFunction BooleanFunction::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("truth table: missing header line");
    line = strip(line);
    if (line.rfind("n=", 0) != 0) throw std::runtime_error("truth table: header must be n=<int>");
    int n = 0;
    try {
        n = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        throw std::runtime_error("truth table: bad integer in header '" + line + "'");
    }
    if (n < 1 || n > 30) throw std::runtime_error("truth table: n out of range");
    const std::size_t N = std::size_t{1} << n;

    if (!std::getline(in, line)) throw std::runtime_error("truth table: missing table line");
    line = strip(line);

    BitString table(N);
    if (line.rfind("0x", 0) == 0 || line.rfind("0X", 0) == 0) {
        const std::string digits = line.substr(2);
        if (N % 4 != 0) throw std::runtime_error("truth table: hex form requires table length divisible by 4");
        if (digits.size() != N / 4)
            throw std::runtime_error("truth table: expected " + std::to_string(N / 4) + " hex digits");
        for (std::size_t t = 0; t < digits.size(); ++t) {
            const int d = hex_digit(digits[t]);
            if (d < 0) throw std::runtime_error("truth table: bad hex digit '" + std::string(1, digits[t]) + "'");
            for (std::size_t u = 0; u < 4; ++u)
                if ((d >> (3 - u)) & 1) table.set(4 * t + u, true);
        }
    } else {
        if (line.size() != N)
            throw std::runtime_error("truth table: expected " + std::to_string(N) + " characters, got " +
                                     std::to_string(line.size()));
        try {
            table = BitString::parse_lsb_first(line);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("truth table: ") + e.what());
        }
    }
    return BooleanFunction(n, std::move(table));
}

BooleanFunction BooleanFunction::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truth table file: " + path);
    return load(in);
}

void BooleanFunction::save(std::ostream& out, bool hex) const {
    out << "n=" << n_ << "\n";
    if (hex) {
        if (size() % 4 != 0) throw std::logic_error("hex save requires table length divisible by 4");
        out << "0x";
        static const char* digits = "0123456789abcdef";
        for (std::size_t t = 0; t < size() / 4; ++t) {
            int d = 0;
            for (std::size_t u = 0; u < 4; ++u)
                d |= table_.get(4 * t + u) << (3 - u);
            out << digits[d];
        }
        out << "\n";
    } else {
        out << table_.lsb_first() << "\n";
    }
}

BitString Basis::reduce(BitString v) const {
    for (std::size_t j = 0; j < vectors_.size(); ++j)
        if (v.get(leading_[j])) v ^= vectors_[j];
    return v;
}

bool Basis::try_extend(const BitString& v) {
    if (v.size() != n_) throw std::invalid_argument("Basis: vector length mismatch");
    BitString r = reduce(v);
    const auto lead = r.leading_index();
    if (!lead) return false;
    for (std::size_t j = 0; j < vectors_.size(); ++j)
        if (vectors_[j].get(*lead)) vectors_[j] ^= r;
    const auto pos = std::lower_bound(leading_.begin(), leading_.end(), *lead);
    const auto idx = static_cast<std::size_t>(pos - leading_.begin());
    leading_.insert(pos, *lead);
    vectors_.insert(vectors_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
    return true;
}

bool Basis::in_reduced_form() const {
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
        const auto lead = vectors_[j].leading_index();
        if (!lead || *lead != leading_[j]) return false;
        if (j > 0 && leading_[j] <= leading_[j - 1]) return false;
        for (std::size_t i = 0; i < vectors_.size(); ++i)
            if (i != j && vectors_[i].get(leading_[j])) return false;
    }
    return true;
}

std::string Basis::canonical_key() const {
    std::string key;
    for (const auto& v : vectors_) {
        key += v.msb_first();
        key += '/';
    }
    return key;
}

BitString hadamard_encode(const BitString& y) {
    const std::size_t m = y.size();
    if (m == 0 || m > 30) throw std::invalid_argument("hadamard_encode: |y| must be in [1, 30]");
    const std::size_t n = std::size_t{1} << m;
    const std::uint64_t yv = y.value();
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i)
        if (std::popcount(yv & i) & 1) x.set(i, true);
    return x;
}

Basis orthogonal_space(std::span<const BitString> vectors, std::size_t n) {
    Basis rows(n);
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("orthogonal_space: vector length mismatch");
        rows.try_extend(v);
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t l : rows.leading()) is_pivot[l] = true;

    Basis result(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        BitString w(n);
        w.set(c, true);
        for (std::size_t j = 0; j < rows.dimension(); ++j)
            if (rows.vectors()[j].get(c)) w.set(rows.leading()[j], true);
        result.try_extend(w);
    }
    return result;
}

long distance_to_pa_serial(const BitString& x, const std::vector<BitString>& A) {
    if (A.empty()) throw std::invalid_argument("distance_to_pa: A must be nonempty");
    long best = static_cast<long>(x.size());
    for (const auto& y : A) {
        const long d = static_cast<long>(BitString::hamming(x, hadamard_encode(y)));
        best = std::min(best, d);
    }
    return best;
}

long distance_to_pa(const BitString& x, const std::vector<BitString>& A) {
    if (A.empty()) throw std::invalid_argument("distance_to_pa: A must be nonempty");
    const long long count = static_cast<long long>(A.size());
    long best = static_cast<long>(x.size());
#pragma omp parallel for reduction(min : best) schedule(static) if (count * static_cast<long long>(x.size()) >= (1 << 18))
    for (long long i = 0; i < count; ++i) {
        const long d = static_cast<long>(BitString::hamming(x, hadamard_encode(A[static_cast<std::size_t>(i)])));
        if (d < best) best = d;
    }
    return best;
}

PropertySpec make_hadamard_property(std::vector<BitString> A, std::size_t n) {
    if (A.empty()) throw std::invalid_argument("hadamard property: A must be nonempty");
    for (const auto& y : A)
        if ((std::size_t{1} << y.size()) != n)
            throw std::invalid_argument("hadamard property: |y| must be log2(n)");
    auto members = std::make_shared<std::vector<BitString>>(std::move(A));
    PropertySpec spec;
    spec.n = n;
    spec.contains = [members](const BitString& x) { return distance_to_pa(x, *members) == 0; };
    spec.distance = [members](const BitString& x) { return distance_to_pa(x, *members); };
    spec.sample_member = [members](Rng& rng) {
        return hadamard_encode((*members)[rng.below(members->size())]);
    };
    return spec;
}

} // namespace qpt
