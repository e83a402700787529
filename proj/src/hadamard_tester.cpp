#include "qpt/hadamard_tester.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qpt {

namespace {

int log2_exact(std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("input length must be a power of two");
    return std::countr_zero(n);
}

bool set_contains(const std::vector<BitString>& A, const BitString& y) {
    return std::find(A.begin(), A.end(), y) != A.end();
}

} // namespace

TesterConfig TesterConfig::for_epsilon(double epsilon, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    TesterConfig cfg;
    cfg.epsilon = epsilon;
    cfg.blr_rounds = static_cast<int>(std::ceil(2.0 / epsilon));
    cfg.seed = seed;
    return cfg;
}

TestOutcome classical_test_pa(QueryOracle& oracle, const std::vector<BitString>& A,
                              const TesterConfig& cfg, Rng& rng) {
    const std::size_t n = oracle.length();
    const int m = log2_exact(n);

    BitString candidate(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        candidate.set(static_cast<std::size_t>(i), oracle.read(std::uint64_t{1} << i));

    bool ok = set_contains(A, candidate);
    const std::uint64_t yv = candidate.value();
    for (int r = 0; r < cfg.blr_rounds; ++r) {
        const std::uint64_t i = rng.below(n);
        const bool expected = std::popcount(yv & i) & 1;
        if (oracle.read(i) != expected) ok = false;
    }

    TestOutcome out;
    out.verdict = ok ? Verdict::accept : Verdict::reject;
    out.transcript = oracle.take_transcript();
    return out;
}

bool blr_round(QueryOracle& oracle, Rng& rng) {
    const std::size_t n = oracle.length();
    log2_exact(n);
    const std::uint64_t i = rng.below(n);
    const std::uint64_t j = rng.below(n);
    const bool xi = oracle.read(i);
    const bool xj = oracle.read(j);
    const bool xij = oracle.read(i ^ j);
    return (xi ^ xj) == xij;
}

double blr_fail_probability(const BitString& x) {
    const std::size_t n = x.size();
    log2_exact(n);
    std::size_t fails = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((x.get(i) ^ x.get(j)) != x.get(i ^ j)) ++fails;
    return static_cast<double>(fails) / (static_cast<double>(n) * static_cast<double>(n));
}

namespace {

QuantumState bv_final_state(const BitString& x) {
    const int m = log2_exact(x.size());
    BooleanFunction f(m, x);
    QuantumState state(m, 0);
    state.not_y();
    state.hadamard_y();
    state.hadamard_x();
    state.oracle_xor(f);
    state.hadamard_x();
    return state;
}

} // namespace

OutcomeDistribution bv_distribution(const BitString& x) {
    return bv_final_state(x).x_distribution();
}

BitString bv_extract(QueryOracle& oracle, Rng& rng) {
    QuantumState state = bv_final_state(oracle.underlying());
    oracle.note_quantum_call();
    return state.measure_x(rng);
}

TestOutcome quantum_test_pa(const BitString& x, const std::vector<BitString>& A,
                            const TesterConfig& cfg, Rng& rng) {
    QueryOracle oracle(x);
    TestOutcome out;
    for (int r = 0; r < cfg.blr_rounds; ++r) {
        if (!blr_round(oracle, rng)) {
            out.verdict = Verdict::reject;
            out.transcript = oracle.take_transcript();
            return out;
        }
    }
    const BitString candidate = bv_extract(oracle, rng);
    out.verdict = set_contains(A, candidate) ? Verdict::accept : Verdict::reject;
    out.transcript = oracle.take_transcript();
    return out;
}

double quantum_reject_probability(const BitString& x, const std::vector<BitString>& A,
                                  const TesterConfig& cfg) {
    const double pass = 1.0 - blr_fail_probability(x);
    const OutcomeDistribution dist = bv_distribution(x);
    double accept_mass = 0.0;
    for (const auto& y : A) accept_mass += dist.prob_of(y);
    return 1.0 - std::pow(pass, cfg.blr_rounds) * accept_mass;
}

std::size_t generic_query_budget(std::size_t member_count, double epsilon) {
    if (member_count == 0) throw std::invalid_argument("generic_test: property must be nonempty");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    const double q = std::ceil(2.0 * (std::log(static_cast<double>(member_count)) + 1.0) / epsilon);
    return static_cast<std::size_t>(q);
}

TestOutcome generic_test(QueryOracle& oracle, const std::vector<BitString>& members,
                         const TesterConfig& cfg, Rng& rng) {
    const std::size_t q = generic_query_budget(members.size(), cfg.epsilon);
    const std::size_t n = oracle.length();

    std::vector<std::uint64_t> positions(q);
    std::vector<bool> answers(q);
    for (std::size_t t = 0; t < q; ++t) {
        positions[t] = rng.below(n);
        answers[t] = oracle.read(positions[t]);
    }

    bool consistent = false;
    for (const auto& g : members) {
        if (g.size() != n) throw std::invalid_argument("generic_test: member length mismatch");
        bool all = true;
        for (std::size_t t = 0; t < q && all; ++t)
            all = g.get(positions[t]) == answers[t];
        if (all) { consistent = true; break; }
    }

    TestOutcome out;
    out.verdict = consistent ? Verdict::accept : Verdict::reject;
    out.transcript = oracle.take_transcript();
    return out;
}

} // namespace qpt
