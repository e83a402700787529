#ifndef QPT_SIMON_TESTER_HPP
#define QPT_SIMON_TESTER_HPP

#include <cstdint>
#include <mutex>
#include <unordered_map>

#include "qpt/bitstring.hpp"
#include "qpt/f2core.hpp"
#include "qpt/hadamard_tester.hpp"
#include "qpt/qsim.hpp"
#include "qpt/rng.hpp"

namespace qpt {

/**
 * Number of x with f(x) = f(x XOR s); exact, full scan.  The packed variant
 * works word-at-a-time (XOR-shuffle plus popcount); n_s_serial is the plain
 * per-point reference kept for testing.
 */
std::size_t n_s(const BooleanFunction& f, const BitString& s);
std::size_t n_s_serial(const BooleanFunction& f, const BitString& s);

/// True iff some nonzero s has f(x) = f(x XOR s) for all x.
bool is_member(const BooleanFunction& f);

/// All invariance shifts of f as a subspace, with its orthogonal complement.
struct PromiseSet {
    Basis s_space;   // {s : f(x) = f(x XOR s) for all x}, including 0
    Basis s_perp;
};
PromiseSet promise_set(const BooleanFunction& f);

/**
 * Exact Hamming distance from f to the nearest function with a nontrivial
 * invariance shift: min over s != 0 of (N - n_s)/2 (one repair per
 * disagreeing pair).  The scan over s is OpenMP-parallel;
 * distance_to_l_serial is the reference.
 */
long distance_to_l(const BooleanFunction& f);
long distance_to_l_serial(const BooleanFunction& f);

/**
 * State of subroutine Q just before the X measurement: workspace X⊗Y⊗Z with
 * k = dim(basis); H on X, one oracle call, H on X, then per basis vector the
 * CNOT / conditional-XOR / H block.  The basis must be in reduced form.
 */
QuantumState q_premeasure_state(const BooleanFunction& f, const Basis& basis);

/**
 * The same state evaluated directly from its closed form
 *   sqrt(2^k)/N * sum_x sum_{y zero at all leading coords}
 *     (-1)^{x.y} |y>|f(x)>|x.z_1>...|x.z_k>.
 * Independent of the circuit path; used as its oracle.
 */
QuantumState closed_form_state(const BooleanFunction& f, const Basis& basis);

/// Draws an outcome from an exact X distribution (position order walk).
BitString sample_outcome(const OutcomeDistribution& dist, Rng& rng);

/// One run of subroutine Q: exactly one oracle invocation, returns the
/// measured X value.
BitString subroutine_q(const BooleanFunction& f, const Basis& basis, Rng& rng);

/// Partition of {0,1}^n into the 2^k sets D_c, c = (x.z_1, ..., x.z_k).
struct CosetPartition {
    std::size_t cells = 1;
    std::vector<std::uint32_t> cell_of;   // indexed by input position
};
CosetPartition coset_partition(const Basis& basis, int n);

/// True iff f is constant on every cell of the partition.
bool is_coset_constant(const BooleanFunction& f, const Basis& basis);

/// Repetition cap per round: ceil(2 log2(n) / eps^2), at least 1.
std::size_t simon_l_max(int n, double eps);

struct SimonOutcome {
    Verdict verdict = Verdict::reject;
    std::size_t oracle_calls = 0;
    std::size_t extensions = 0;
};

/// Memo of exact X distributions keyed by basis.  Bound to the first f it
/// sees (mixing functions throws).  Safe to share across threads running
/// trials on the same f.
class XDistributionCache {
public:
    const OutcomeDistribution& get(const BooleanFunction& f, const Basis& basis);

private:
    std::mutex mutex_;
    BitString bound_table_;
    std::unordered_map<std::string, OutcomeDistribution> by_basis_;
};

struct SimonOptions {
    // When set, every nonzero measured z is checked against the promise
    // (z orthogonal to every invariance shift); a violation throws.
    const PromiseSet* promise = nullptr;
    XDistributionCache* cache = nullptr;
};

/**
 * Main tester: up to n rounds; each round repeats subroutine Q until a
 * nonzero z or simon_l_max repetitions, accepts on an all-zero streak,
 * otherwise extends the basis with z and continues; rejects after n
 * extensions.  Every accepted z must extend the basis independently with a
 * fresh leading coordinate; a violation throws (internal consistency).
 * One-sided: members are accepted on every run.
 */
SimonOutcome main_program(const BooleanFunction& f, double eps, Rng& rng,
                          const SimonOptions& opts = {});

/**
 * Exact acceptance probability of main_program by branching over all
 * measurement outcomes with their probability weights (n <= 3 only).
 */
double main_program_exact_accept(const BooleanFunction& f, double eps);

/// A member drawn pairwise: explicit shift s plus a function constant on
/// each pair {x, x XOR s}.
struct PairedSample {
    BitString s;
    BooleanFunction f;
};

/// Distribution P: uniform nonzero s, one uniform bit per matched pair.
PairedSample sample_p(int n, Rng& rng);
/// Distribution U: every value an independent uniform bit.
BooleanFunction sample_u(int n, Rng& rng);

PropertySpec make_simon_property(int n);

} // namespace qpt

#endif
