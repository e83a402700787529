#ifndef QPT_HADAMARD_TESTER_HPP
#define QPT_HADAMARD_TESTER_HPP

#include <cstdint>
#include <vector>

#include "qpt/bitstring.hpp"
#include "qpt/f2core.hpp"
#include "qpt/qsim.hpp"
#include "qpt/rng.hpp"

namespace qpt {

enum class Verdict { accept, reject };

struct TesterConfig {
    double epsilon = 0.1;
    int blr_rounds = 20;           // k
    std::uint64_t seed = 0;

    // Default round count k = ceil(2/epsilon).
    static TesterConfig for_epsilon(double epsilon, std::uint64_t seed = 0);
};

struct QueryEvent {
    enum class Kind { position, quantum };
    Kind kind = Kind::position;
    std::uint64_t position = 0;
};

struct TestOutcome {
    Verdict verdict = Verdict::reject;
    std::vector<QueryEvent> transcript;

    std::size_t queries() const { return transcript.size(); }
    bool accepted() const { return verdict == Verdict::accept; }
};

/// Read access to the tested string with per-position query accounting.
class QueryOracle {
public:
    explicit QueryOracle(const BitString& x) : x_(&x) {}

    bool read(std::uint64_t position) {
        log_.push_back({QueryEvent::Kind::position, position});
        return x_->get(position);
    }
    /// Logs one full quantum oracle invocation.
    void note_quantum_call() { log_.push_back({QueryEvent::Kind::quantum, 0}); }

    std::size_t length() const { return x_->size(); }
    std::size_t queries() const { return log_.size(); }
    const BitString& underlying() const { return *x_; }
    std::vector<QueryEvent> take_transcript() { return std::move(log_); }

private:
    const BitString* x_;
    std::vector<QueryEvent> log_;
};

/**
 * Classical tester for P_A: reads positions 2^i to form the candidate y
 * (y_i = x at position 2^i), then k random positions checked against the
 * candidate codeword.  Nonadaptive; always log2(n) + k queries.  Rejects if
 * the candidate is outside A or any spot check disagrees; never rejects a
 * member.
 */
TestOutcome classical_test_pa(QueryOracle& oracle, const std::vector<BitString>& A,
                              const TesterConfig& cfg, Rng& rng);

/// One linearity round: x_i XOR x_j vs x_{i XOR j} at random i, j; 3 queries.
bool blr_round(QueryOracle& oracle, Rng& rng);

/// Exact single-round failure probability, by enumeration of all n^2 ordered
/// (i, j) pairs.
double blr_fail_probability(const BitString& x);

/// Exact X-outcome distribution of the Bernstein-Vazirani circuit on x
/// (H on X, Y prepared to (|0>-|1>)/sqrt 2, one oracle call, H on X).
OutcomeDistribution bv_distribution(const BitString& x);

/// Runs the Bernstein-Vazirani circuit with one oracle invocation and returns
/// the measured candidate; exact on codewords.
BitString bv_extract(QueryOracle& oracle, Rng& rng);

/**
 * Quantum tester for P_A: k BLR rounds (rejecting on the first failure),
 * then one Bernstein-Vazirani extraction; accepts iff the extracted y is in
 * A.  At most 3k + 1 oracle invocations, independently of n; exactly 3k + 1
 * on members.  One-sided.
 */
TestOutcome quantum_test_pa(const BitString& x, const std::vector<BitString>& A,
                            const TesterConfig& cfg, Rng& rng);

/// Exact rejection probability of quantum_test_pa on x:
/// 1 - (single-round BLR pass probability)^k * Pr[BV outcome in A].
double quantum_reject_probability(const BitString& x, const std::vector<BitString>& A,
                                  const TesterConfig& cfg);

/// Query budget of generic_test: ceil(2 (ln s + 1) / epsilon).
std::size_t generic_query_budget(std::size_t member_count, double epsilon);

/**
 * Tester for an arbitrary explicit property: reads generic_query_budget
 * random positions and accepts iff some member agrees with every answer.
 * One-sided; the budget makes s(1-eps)^q <= 1/3 for all s >= 1.
 */
TestOutcome generic_test(QueryOracle& oracle, const std::vector<BitString>& members,
                         const TesterConfig& cfg, Rng& rng);

} // namespace qpt

#endif
