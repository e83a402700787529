#include "qpt/lemma_checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qpt/dwise.hpp"
#include "qpt/hadamard_tester.hpp"
#include "qpt/qsim.hpp"

namespace qpt {

Basis random_reduced_basis(std::size_t n, Rng& rng, int dim) {
    const std::size_t target = dim < 0 ? rng.below(n + 1) : static_cast<std::size_t>(dim);
    if (target > n) throw std::invalid_argument("random_reduced_basis: dim > n");
    Basis basis(n);
    while (basis.dimension() < target) {
        const std::uint64_t v = 1 + rng.below((std::uint64_t{1} << n) - 1);
        basis.try_extend(BitString::from_value(n, v));
    }
    return basis;
}

std::vector<Basis> enumerate_all_bases(std::size_t n) {
    std::map<std::string, Basis> seen;
    seen.emplace(Basis(n).canonical_key(), Basis(n));
    std::vector<Basis> frontier{Basis(n)};
    while (!frontier.empty()) {
        std::vector<Basis> next;
        for (const auto& basis : frontier) {
            for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
                Basis extended = basis;
                if (!extended.try_extend(BitString::from_value(n, v))) continue;
                if (seen.emplace(extended.canonical_key(), extended).second) next.push_back(extended);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Basis> all;
    all.reserve(seen.size());
    for (auto& [key, basis] : seen) all.push_back(basis);
    std::sort(all.begin(), all.end(), [](const Basis& a, const Basis& b) {
        if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
        return a.canonical_key() < b.canonical_key();
    });
    return all;
}

long majority_repair_distance(const BooleanFunction& f, const Basis& basis) {
    const CosetPartition part = coset_partition(basis, f.domain_bits());
    std::vector<long> ones(part.cells, 0), total(part.cells, 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        ++total[part.cell_of[x]];
        if (f.at(x)) ++ones[part.cell_of[x]];
    }
    long distance = 0;
    for (std::size_t c = 0; c < part.cells; ++c)
        distance += std::min(ones[c], total[c] - ones[c]);
    return distance;
}

bool p0_is_one_exact(const BooleanFunction& f, const Basis& basis) {
    const CosetPartition part = coset_partition(basis, f.domain_bits());
    std::vector<std::uint64_t> count(part.cells * 2, 0);
    for (std::size_t x = 0; x < f.size(); ++x)
        ++count[part.cell_of[x] * 2 + (f.at(x) ? 1 : 0)];
    std::uint64_t sum_sq = 0;
    for (std::uint64_t c : count) sum_sq += c * c;
    const std::uint64_t N = f.size();
    return sum_sq * part.cells == N * N;
}

CheckResult check_hadamard_code_facts() {
    CheckResult res{"hadamard-code: injective, pairwise distance n/2", true, ""};
    for (std::size_t m = 1; m <= 5; ++m) {
        const std::size_t n = std::size_t{1} << m;
        std::vector<BitString> codewords;
        for (std::uint64_t y = 0; y < n; ++y)
            codewords.push_back(hadamard_encode(BitString::from_value(m, y)));
        for (std::size_t a = 0; a < codewords.size(); ++a) {
            for (std::size_t b = a + 1; b < codewords.size(); ++b) {
                if (BitString::hamming(codewords[a], codewords[b]) != n / 2) {
                    res.pass = false;
                    res.detail = "pair distance off at n=" + std::to_string(n);
                    return res;
                }
            }
        }
    }
    return res;
}

CheckResult check_bv_exactness() {
    CheckResult res{"bernstein-vazirani: codeword recovered with probability 1", true, ""};
    for (std::size_t m = 2; m <= 5; ++m) {
        for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << m); ++yv) {
            const BitString y = BitString::from_value(m, yv);
            const double mass = bv_distribution(hadamard_encode(y)).prob_of(y);
            if (mass < 1.0 - 1e-9) {
                res.pass = false;
                res.detail = "mass " + std::to_string(mass) + " at n=" + std::to_string(1 << m);
                return res;
            }
        }
    }
    return res;
}

CheckResult check_state_equivalence(std::uint64_t seed) {
    CheckResult res{"subroutine state matches its closed form (1e-10)", true, ""};
    Rng rng(seed);
    for (int n = 2; n <= 4; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            const BooleanFunction f = BooleanFunction::random(n, rng);
            const Basis basis = random_reduced_basis(static_cast<std::size_t>(n), rng);
            const QuantumState simulated = q_premeasure_state(f, basis);
            const QuantumState direct = closed_form_state(f, basis);
            double max_dev = 0.0;
            for (std::size_t i = 0; i < simulated.dimension(); ++i)
                max_dev = std::max(max_dev, std::abs(simulated.amplitude(i) - direct.amplitude(i)));
            if (max_dev >= 1e-10) {
                res.pass = false;
                res.detail = "deviation " + std::to_string(max_dev) + " at n=" + std::to_string(n);
                return res;
            }
        }
    }
    return res;
}

CheckResult check_measured_z_invariants(std::uint64_t seed) {
    CheckResult res{"measured z: independent, fresh leading coord, orthogonal to promise", true, ""};
    Rng rng(seed);
    for (int n = 3; n <= 4; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            const PairedSample member = sample_p(n, rng);
            const PromiseSet promise = promise_set(member.f);
            XDistributionCache cache;
            SimonOptions opts;
            opts.promise = &promise;
            opts.cache = &cache;
            for (int run = 0; run < 8; ++run) {
                Rng run_rng = Rng::for_stream(seed, static_cast<std::uint64_t>(n * 1000 + rep * 10 + run));
                SimonOutcome out;
                try {
                    out = main_program(member.f, 0.25, run_rng, opts);
                } catch (const std::logic_error& e) {
                    res.pass = false;
                    res.detail = e.what();
                    return res;
                }
                if (out.verdict != Verdict::accept) {
                    res.pass = false;
                    res.detail = "member rejected at n=" + std::to_string(n);
                    return res;
                }
            }
        }
    }
    return res;
}

CheckResult check_zero_state_iff_n3() {
    CheckResult res{"X=0 mass is 1 iff f constant on every coset (exhaustive n=3)", true, ""};
    const auto bases = enumerate_all_bases(3);
    for (std::uint64_t table = 0; table < 256; ++table) {
        const BooleanFunction f(3, BitString::from_value(8, table));
        for (const auto& basis : bases) {
            const bool constant = is_coset_constant(f, basis);
            const bool exact_one = p0_is_one_exact(f, basis);
            const double p0 = closed_form_state(f, basis).p0_norm_sq();
            const bool float_one = std::abs(p0 - 1.0) < 1e-10;
            if (constant != exact_one || constant != float_one) {
                res.pass = false;
                res.detail = "table " + std::to_string(table) + " basis " + basis.canonical_key();
                return res;
            }
        }
    }
    return res;
}

CheckResult check_zero_state_approx_n3() {
    CheckResult res{"X=0 mass >= 1 - eps^2/2 implies an eps*N coset repair (n=3)", true, ""};
    const auto bases = enumerate_all_bases(3);
    for (const double eps : {0.25, 0.5}) {
        for (std::uint64_t table = 0; table < 256; ++table) {
            const BooleanFunction f(3, BitString::from_value(8, table));
            for (const auto& basis : bases) {
                const double p0 = closed_form_state(f, basis).p0_norm_sq();
                if (p0 < 1.0 - eps * eps / 2.0) continue;
                const long repair = majority_repair_distance(f, basis);
                if (static_cast<double>(repair) > eps * static_cast<double>(f.size()) + 1e-12) {
                    res.pass = false;
                    res.detail = "table " + std::to_string(table) + ", eps " + std::to_string(eps) +
                                 ", repair " + std::to_string(repair);
                    return res;
                }
            }
        }
    }
    return res;
}

CheckResult check_member_iff_n3() {
    CheckResult res{"minimal coset-constant dimension < n iff member (exhaustive n=3)", true, ""};
    const auto bases = enumerate_all_bases(3);
    for (std::uint64_t table = 0; table < 256; ++table) {
        const BooleanFunction f(3, BitString::from_value(8, table));
        std::size_t min_dim = 3;
        for (const auto& basis : bases) {
            if (basis.dimension() < min_dim && is_coset_constant(f, basis)) min_dim = basis.dimension();
        }
        if ((min_dim < 3) != is_member(f)) {
            res.pass = false;
            res.detail = "table " + std::to_string(table);
            return res;
        }
    }
    return res;
}

CheckResult check_measure_zero_arithmetic() {
    CheckResult res{"repetition bound: (1-delta)^m <= q for m = ceil(log q / log(1-delta))", true, ""};
    for (const double q : {0.5, 0.2, 0.1, 1.0 / 12.0, 0.01, 1e-4}) {
        for (const double delta : {0.9, 0.5, 0.125, 1.0 / 128.0, 1e-3}) {
            const double m = std::ceil(std::log(q) / std::log(1.0 - delta));
            const double streak = std::pow(1.0 - delta, m);
            if (streak > q * (1.0 + 1e-12)) {
                res.pass = false;
                res.detail = "q=" + std::to_string(q) + " delta=" + std::to_string(delta);
                return res;
            }
        }
    }
    return res;
}

CheckResult check_dwise_shipped() {
    CheckResult res{"d-wise space (k=3,t=1): size 16, 3-wise independent, degree-3 gaps zero", true, ""};
    const DWiseSpace space(3, 1);
    if (space.size() != 16) {
        res.pass = false;
        res.detail = "size " + std::to_string(space.size());
        return res;
    }
    const DwiseReport report = verify_dwise(space, 3);
    if (!report.pass) {
        res.pass = false;
        res.detail = report.detail;
        return res;
    }
    // Degree <= 3 expectation matches uniform exactly.
    for (int a = 0; a < space.positions(); ++a)
        for (int b = a + 1; b < space.positions(); ++b)
            for (int c = b + 1; c < space.positions(); ++c) {
                const MonomialGap g = monomial_gap(space, Monomial{{a, b, c}});
                if (g.gap != 0.0) {
                    res.pass = false;
                    res.detail = "degree-3 gap nonzero";
                    return res;
                }
            }
    // Tightness: some 4-subset must break.
    if (verify_dwise(space, 4).pass) {
        res.pass = false;
        res.detail = "4-wise verification unexpectedly passed";
        return res;
    }
    return res;
}

std::vector<CheckResult> run_lemma_checks(std::uint64_t seed) {
    return {
        check_hadamard_code_facts(),
        check_bv_exactness(),
        check_state_equivalence(seed),
        check_measured_z_invariants(seed),
        check_zero_state_iff_n3(),
        check_zero_state_approx_n3(),
        check_member_iff_n3(),
        check_measure_zero_arithmetic(),
        check_dwise_shipped(),
    };
}

} // namespace qpt
