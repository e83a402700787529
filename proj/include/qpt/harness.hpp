#ifndef QPT_HARNESS_HPP
#define QPT_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qpt/bitstring.hpp"
#include "qpt/f2core.hpp"
#include "qpt/rng.hpp"

namespace qpt {

/**
 * One tester run.  Canonical JSONL serialization covers every field except
 * wall_ms, which depends on the machine; pass include_timing to persist it
 * (that output is no longer bit-reproducible across hosts).
 */
struct TrialRecord {
    std::string experiment;
    int n = 0;
    double eps = 0.0;
    std::string mode;     // classical | quantum | generic | simon | bias
    std::string cohort;   // member | far | n/a
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::string verdict;  // accept | reject
    std::uint64_t queries = 0;
    double wall_ms = 0.0;
    std::map<std::string, double> extras;   // e.g. bias fields

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

void persist(const std::vector<TrialRecord>& records, std::ostream& out, bool include_timing = false);
void persist_file(const std::vector<TrialRecord>& records, const std::string& path,
                  bool include_timing = false);
std::string to_jsonl(const std::vector<TrialRecord>& records, bool include_timing = false);

/// Inverse of persist; parse errors name the offending line.
std::vector<TrialRecord> load(std::istream& in);
std::vector<TrialRecord> load_file(const std::string& path);

/// CSV projection of the JSONL records (the JSONL stays the source of truth).
void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);

struct ExperimentSummary {
    std::string experiment;
    int n = 0;
    double eps = 0.0;
    std::string mode;
    std::string cohort;
    std::size_t trials = 0;
    std::size_t accepts = 0;
    double accept_frequency = 0.0;
    double mean_queries = 0.0;
    std::uint64_t max_queries = 0;
    double ci_low = 0.0;    // 95% Wilson interval for the accept frequency
    double ci_high = 0.0;
};

/// Aggregates records per (experiment, n, eps, mode, cohort), sorted by key.
std::vector<ExperimentSummary> summarize(const std::vector<TrialRecord>& records);

/// Wilson 95% binomial interval; always contains successes/trials.
void wilson_interval(std::size_t successes, std::size_t trials, double& low, double& high);

/// Per-trial stream: depends only on (master, index), never on scheduling.
inline Rng trial_rng(std::uint64_t master, std::uint64_t index) {
    return Rng::for_stream(master, index);
}

/// Master seed default: QPT_SEED from the environment, else 1.
std::uint64_t default_seed();

/// A-set file: one log2(n)-bit string per line (numeral order, most
/// significant coordinate first); blank lines ignored.
std::vector<BitString> load_a_set(std::istream& in, int expected_bits);
std::vector<BitString> load_a_set_file(const std::string& path, int expected_bits);

/// Uniform input rejection-sampled to distance_to_pa > eps*n (exact oracle).
BitString sample_far_from_pa(std::size_t n, const std::vector<BitString>& A, double eps, Rng& rng);

/// Uniform function rejection-sampled to distance_to_l > eps*N (exact oracle).
BooleanFunction sample_far_from_l(int domain_bits, double eps, Rng& rng);

struct SeparationParams {
    std::vector<int> n_values;       // each a power of two
    std::vector<double> eps_values;
    std::size_t trials_per_cell = 100;
    std::uint64_t seed = 1;
    int workers = 0;                 // 0 = library default
};

/**
 * For each (n, eps): a random size-n/2 subset A, then `trials_per_cell`
 * member and far inputs through the classical and quantum testers.  Far
 * inputs are rejection-sampled against the exact distance oracle.  Record
 * order and contents depend only on the seed.
 */
std::vector<TrialRecord> run_separation_hadamard(const SeparationParams& params);

struct BiasParams {
    int n = 6;                // domain bits; N = 2^n positions, n <= 8
    int depth = 5;            // queries per strategy
    int strategies = 100;
    std::size_t samples = 10000;   // per distribution, per strategy
    std::uint64_t seed = 1;
    int workers = 0;
};

struct BiasResult {
    std::vector<TrialRecord> records;   // one per strategy, extras: bias fields
    double max_bias = 0.0;
};

/**
 * Samples random deterministic depth-q query strategies (random query
 * positions per node, random accept/reject leaves) and estimates
 * |Pr_P[accept] - Pr_U[accept]| per strategy from fresh seeded samples.
 */
BiasResult run_bias_experiment(const BiasParams& params);

} // namespace qpt

#endif
