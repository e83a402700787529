#include "qpt/dwise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace qpt {

namespace {

// Primitive polynomial per degree, x^k term included.
constexpr std::uint32_t kModulus[17] = {
    0,
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
};

} // namespace

GF2k::GF2k(int k) : k_(k) {
    if (!has_modulus(k)) throw std::invalid_argument("GF2k: degree must be in [1, 16]");
    modulus_ = kModulus[k];
}

bool GF2k::has_modulus(int k) { return k >= 1 && k <= 16; }

std::uint32_t GF2k::mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t acc = 0;
    std::uint64_t shifted = a;
    while (b != 0) {
        if (b & 1u) acc ^= shifted;
        shifted <<= 1;
        b >>= 1;
    }
    for (int bit = 2 * k_ - 2; bit >= k_; --bit)
        if ((acc >> bit) & 1u) acc ^= static_cast<std::uint64_t>(modulus_) << (bit - k_);
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t GF2k::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1;
    std::uint32_t base = a;
    while (e != 0) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint32_t GF2k::inverse(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("GF2k: zero has no inverse");
    return pow(a, (std::uint64_t{1} << k_) - 2);
}

DWiseSpace::DWiseSpace(int k, int t) : k_(k), t_(t) {
    if (!GF2k::has_modulus(k)) throw std::invalid_argument("DWiseSpace: k must be in [1, 16]");
    if (t < 1) throw std::invalid_argument("DWiseSpace: t must be at least 1");
    n_ = (1 << k_) - 1;
    if (2 * t_ + 1 > n_) throw std::invalid_argument("DWiseSpace: d = 2t+1 must not exceed n");
    if (seed_bits() > 62) throw std::invalid_argument("DWiseSpace: seed space too large");

    const GF2k field(k_);
    columns_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        const std::uint32_t a = field.pow(field.generator(), static_cast<std::uint64_t>(i));
        std::uint64_t col = 1;   // constant component
        for (int l = 1; l <= t_; ++l) {
            const std::uint32_t elem = field.pow(a, static_cast<std::uint64_t>(2 * l - 1));
            col |= static_cast<std::uint64_t>(elem) << (1 + (l - 1) * k_);
        }
        columns_[static_cast<std::size_t>(i)] = col;
    }
}

std::uint64_t DWiseSpace::column(int position) const {
    if (position < 0 || position >= n_) throw std::invalid_argument("DWiseSpace: position out of range");
    return columns_[static_cast<std::size_t>(position)];
}

int DWiseSpace::xi(std::uint64_t z, int position) const {
    if (z >= size()) throw std::invalid_argument("DWiseSpace: seed out of range");
    return std::popcount(z & column(position)) & 1;
}

BitString DWiseSpace::word(std::uint64_t z) const {
    if (z >= size()) throw std::invalid_argument("DWiseSpace: seed out of range");
    BitString w(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        if (std::popcount(z & columns_[static_cast<std::size_t>(i)]) & 1) w.set(static_cast<std::size_t>(i), true);
    return w;
}

std::vector<BitString> property_members(const DWiseSpace& space) {
    std::vector<BitString> members;
    members.reserve(static_cast<std::size_t>(space.size()));
    for (std::uint64_t z = 0; z < space.size(); ++z) members.push_back(space.word(z));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

PropertySpec enumerate_property(const DWiseSpace& space) {
    if (space.positions() > 20)
        throw std::invalid_argument("enumerate_property: exhaustive materialization limited to n <= 20");
    auto members = std::make_shared<std::vector<BitString>>(property_members(space));
    const std::uint64_t seeds = space.size();
    const int n_pos = space.positions();
    auto lookup = [members](const BitString& x) {
        return std::binary_search(members->begin(), members->end(), x);
    };
    PropertySpec spec;
    spec.n = static_cast<std::size_t>(n_pos);
    spec.contains = lookup;
    spec.distance = [members](const BitString& x) {
        long best = static_cast<long>(x.size());
        for (const auto& m : *members)
            best = std::min(best, static_cast<long>(BitString::hamming(x, m)));
        return best;
    };
    auto space_copy = std::make_shared<DWiseSpace>(space);
    spec.sample_member = [space_copy, seeds](Rng& rng) { return space_copy->word(rng.below(seeds)); };
    return spec;
}

namespace {

void require_exhaustive(const DWiseSpace& space, int d) {
    if (space.positions() > 15 || d > 5)
        throw std::invalid_argument("exhaustive subset scan limited to n <= 15, d <= 5");
    if (d < 1 || d > space.positions()) throw std::invalid_argument("d out of range");
}

double subset_count(int n, int d) {
    double c = 1.0;
    for (int i = 0; i < d; ++i) c = c * (n - i) / (i + 1);
    return c;
}

// Calls visit(subset) for every size-r subset of {0..n-1}.
template <typename Visit>
void for_each_subset(int n, int r, Visit&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(idx);
        int pos = r - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - r + pos) --pos;
        if (pos < 0) return;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < r; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

std::string describe_subset(const std::vector<int>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "}";
}

} // namespace

DwiseReport verify_dwise(const DWiseSpace& space, int d) {
    require_exhaustive(space, d);
    DwiseReport report;
    for (int r = 1; r <= d && report.pass; ++r) {
        const std::uint64_t expected = space.size() >> r;
        std::vector<std::uint64_t> counts(std::size_t{1} << r);
        for_each_subset(space.positions(), r, [&](const std::vector<int>& idx) {
            if (!report.pass) return;
            std::fill(counts.begin(), counts.end(), 0);
            for (std::uint64_t z = 0; z < space.size(); ++z) {
                std::size_t pattern = 0;
                for (std::size_t b = 0; b < idx.size(); ++b)
                    pattern |= static_cast<std::size_t>(space.xi(z, idx[b])) << b;
                ++counts[pattern];
            }
            for (std::size_t pattern = 0; pattern < counts.size(); ++pattern) {
                if (counts[pattern] != expected) {
                    report.pass = false;
                    report.detail = "subset " + describe_subset(idx) + " pattern " + std::to_string(pattern) +
                                    " occurs " + std::to_string(counts[pattern]) + " times, expected " +
                                    std::to_string(expected);
                    return;
                }
            }
        });
    }
    return report;
}

bool classical_lb_witness(const DWiseSpace& space, int d) {
    if (d < 1 || d > space.positions()) throw std::invalid_argument("d out of range");
    if (d > 25 || subset_count(space.positions(), d) * static_cast<double>(space.size()) > 1e8)
        throw std::invalid_argument("coverage scan too large for exhaustive checking");
    bool all_covered = true;
    std::vector<bool> seen(std::size_t{1} << d);
    for_each_subset(space.positions(), d, [&](const std::vector<int>& idx) {
        if (!all_covered) return;
        std::fill(seen.begin(), seen.end(), false);
        for (std::uint64_t z = 0; z < space.size(); ++z) {
            std::size_t pattern = 0;
            for (std::size_t b = 0; b < idx.size(); ++b)
                pattern |= static_cast<std::size_t>(space.xi(z, idx[b])) << b;
            seen[pattern] = true;
        }
        for (bool hit : seen)
            if (!hit) { all_covered = false; return; }
    });
    return all_covered;
}

MonomialGap monomial_gap(const DWiseSpace& space, const Monomial& m) {
    for (int pos : m.positions)
        if (pos < 0 || pos >= space.positions())
            throw std::invalid_argument("monomial_gap: position out of range");
    std::uint64_t ones = 0;
    for (std::uint64_t z = 0; z < space.size(); ++z) {
        bool all = true;
        for (int pos : m.positions)
            if (space.xi(z, pos) == 0) { all = false; break; }
        if (all) ++ones;
    }
    MonomialGap gap;
    gap.e_property = static_cast<double>(ones) / static_cast<double>(space.size());
    gap.e_uniform = std::ldexp(1.0, -static_cast<int>(m.degree()));
    gap.gap = gap.e_property - gap.e_uniform;
    return gap;
}

} // namespace qpt
