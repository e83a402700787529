#include "qpt/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "qpt/f2core.hpp"
#include "qpt/hadamard_tester.hpp"
#include "qpt/simon_tester.hpp"

namespace qpt {

using nlohmann::json;

namespace {

json record_to_json(const TrialRecord& r, bool include_timing) {
    json j;
    j["experiment"] = r.experiment;
    j["n"] = r.n;
    j["eps"] = r.eps;
    j["mode"] = r.mode;
    j["cohort"] = r.cohort;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["verdict"] = r.verdict;
    j["queries"] = r.queries;
    if (include_timing) j["wall_ms"] = r.wall_ms;
    for (const auto& [key, value] : r.extras) j[key] = value;
    return j;
}

TrialRecord record_from_json(const json& j) {
    static const char* known[] = {"experiment", "n",       "eps",     "mode",    "cohort",
                                  "trial",      "seed",    "verdict", "queries", "wall_ms"};
    TrialRecord r;
    r.experiment = j.at("experiment").get<std::string>();
    r.n = j.at("n").get<int>();
    r.eps = j.at("eps").get<double>();
    r.mode = j.at("mode").get<std::string>();
    r.cohort = j.at("cohort").get<std::string>();
    r.trial = j.at("trial").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.verdict = j.at("verdict").get<std::string>();
    r.queries = j.at("queries").get<std::uint64_t>();
    if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool is_known = false;
        for (const char* name : known)
            if (it.key() == name) { is_known = true; break; }
        if (!is_known) r.extras[it.key()] = it.value().get<double>();
    }
    return r;
}

} // namespace

std::string to_jsonl(const std::vector<TrialRecord>& records, bool include_timing) {
    std::string out;
    for (const auto& r : records) {
        out += record_to_json(r, include_timing).dump();
        out += '\n';
    }
    return out;
}

void persist(const std::vector<TrialRecord>& records, std::ostream& out, bool include_timing) {
    out << to_jsonl(records, include_timing);
}

void persist_file(const std::vector<TrialRecord>& records, const std::string& path, bool include_timing) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    persist(records, out, include_timing);
}

std::vector<TrialRecord> load(std::istream& in) {
    std::vector<TrialRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            records.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<TrialRecord> load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load(in);
}

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "experiment,n,eps,mode,seed,verdict,queries\n";
    for (const auto& r : records) {
        json eps = r.eps;   // shortest round-trip formatting
        out << r.experiment << ',' << r.n << ',' << eps.dump() << ',' << r.mode << ',' << r.seed << ','
            << r.verdict << ',' << r.queries << '\n';
    }
}

void wilson_interval(std::size_t successes, std::size_t trials, double& low, double& high) {
    if (trials == 0) { low = 0.0; high = 1.0; return; }
    const double z = 1.959963984540054;
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nt;
    const double denom = 1.0 + z * z / nt;
    const double center = (p + z * z / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)) / denom;
    low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    high = successes == trials ? 1.0 : std::min(1.0, center + half);
}

std::vector<ExperimentSummary> summarize(const std::vector<TrialRecord>& records) {
    using Key = std::tuple<std::string, int, double, std::string, std::string>;
    std::map<Key, ExperimentSummary> groups;
    std::map<Key, std::uint64_t> query_totals;
    for (const auto& r : records) {
        const Key key{r.experiment, r.n, r.eps, r.mode, r.cohort};
        auto& s = groups[key];
        if (s.trials == 0) {
            s.experiment = r.experiment;
            s.n = r.n;
            s.eps = r.eps;
            s.mode = r.mode;
            s.cohort = r.cohort;
        }
        ++s.trials;
        if (r.verdict == "accept") ++s.accepts;
        query_totals[key] += r.queries;
        s.max_queries = std::max(s.max_queries, r.queries);
    }
    std::vector<ExperimentSummary> out;
    out.reserve(groups.size());
    for (auto& [key, s] : groups) {
        s.accept_frequency = static_cast<double>(s.accepts) / static_cast<double>(s.trials);
        s.mean_queries = static_cast<double>(query_totals[key]) / static_cast<double>(s.trials);
        wilson_interval(s.accepts, s.trials, s.ci_low, s.ci_high);
        out.push_back(s);
    }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QPT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("QPT_SEED must be an unsigned integer");
        }
    }
    return 1;
}

std::vector<BitString> load_a_set(std::istream& in, int expected_bits) {
    std::vector<BitString> a;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(start, end - start + 1);
        try {
            a.push_back(BitString::parse_msb_first(token));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (static_cast<int>(a.back().size()) != expected_bits)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(expected_bits) + " bits, got " +
                                     std::to_string(a.back().size()));
    }
    if (a.empty()) throw std::runtime_error("A-set is empty");
    return a;
}

std::vector<BitString> load_a_set_file(const std::string& path, int expected_bits) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open A-set file: " + path);
    try {
        return load_a_set(in, expected_bits);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

BitString sample_far_from_pa(std::size_t n, const std::vector<BitString>& A, double eps, Rng& rng) {
    const double threshold = eps * static_cast<double>(n);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        BitString x(n);
        for (std::size_t j = 0; j < n; ++j) x.set(j, rng.flip());
        if (static_cast<double>(distance_to_pa(x, A)) > threshold) return x;
    }
    throw std::runtime_error("could not sample a far input; epsilon too large for this n?");
}

BooleanFunction sample_far_from_l(int domain_bits, double eps, Rng& rng) {
    const double threshold = eps * static_cast<double>(std::size_t{1} << domain_bits);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        BooleanFunction f = sample_u(domain_bits, rng);
        if (static_cast<double>(distance_to_l(f)) > threshold) return f;
    }
    throw std::runtime_error("could not sample a far function; epsilon too large for this n?");
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto d = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double, std::milli>(d).count();
}

void set_workers(int workers) {
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(workers);
#else
    (void)workers;
#endif
}

std::vector<BitString> random_a_set(int log_n, std::size_t size, Rng& rng) {
    const std::size_t universe = std::size_t{1} << log_n;
    std::vector<std::size_t> values(universe);
    for (std::size_t v = 0; v < universe; ++v) values[v] = v;
    // Partial Fisher-Yates for the first `size` slots.
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + rng.below(universe - i);
        std::swap(values[i], values[j]);
    }
    std::vector<BitString> a;
    a.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        a.push_back(BitString::from_value(static_cast<std::size_t>(log_n), values[i]));
    std::sort(a.begin(), a.end());
    return a;
}

} // namespace

std::vector<TrialRecord> run_separation_hadamard(const SeparationParams& params) {
    for (int n : params.n_values)
        if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("separation: each n must be a power of two >= 2");
    for (double eps : params.eps_values)
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("separation: eps must be in (0,1)");
    set_workers(params.workers);

    struct Cell {
        int n;
        double eps;
        std::vector<BitString> a;
        std::uint64_t seed_base;
    };
    std::vector<Cell> cells;
    std::uint64_t cell_index = 0;
    for (int n : params.n_values) {
        for (double eps : params.eps_values) {
            Rng setup = trial_rng(params.seed, 0x5e7e000000000000ULL + cell_index);
            const int log_n = std::countr_zero(static_cast<unsigned>(n));
            const std::size_t a_size = std::max<std::size_t>(1, static_cast<std::size_t>(n) / 2);
            cells.push_back({n, eps, random_a_set(log_n, a_size, setup),
                             params.seed ^ (0x1000000ULL * (cell_index + 1))});
            ++cell_index;
        }
    }

    // Flattened work items: cell x cohort x trial; one classical and one
    // quantum run per item, written by index.  Exceptions may not cross the
    // parallel region; the first one is stashed and rethrown after the join.
    const std::size_t per_cell = 2 * params.trials_per_cell;
    std::vector<TrialRecord> records(cells.size() * per_cell * 2);
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long item = 0; item < static_cast<long long>(cells.size() * per_cell); ++item) {
        if (failure != nullptr) continue;
        try {
        const std::size_t cell_id = static_cast<std::size_t>(item) / per_cell;
        const std::size_t within = static_cast<std::size_t>(item) % per_cell;
        const Cell& cell = cells[cell_id];
        const bool member_cohort = within < params.trials_per_cell;
        const std::uint64_t trial = within % params.trials_per_cell;

        Rng rng = trial_rng(cell.seed_base, within * 3);
        const BitString input = member_cohort
                                    ? hadamard_encode(cell.a[rng.below(cell.a.size())])
                                    : sample_far_from_pa(static_cast<std::size_t>(cell.n), cell.a, cell.eps, rng);

        const TesterConfig cfg = TesterConfig::for_epsilon(cell.eps, cell.seed_base);
        TrialRecord base;
        base.experiment = "separation";
        base.n = cell.n;
        base.eps = cell.eps;
        base.cohort = member_cohort ? "member" : "far";
        base.trial = trial;
        base.seed = cell.seed_base ^ within;

        const auto t0 = std::chrono::steady_clock::now();
        QueryOracle oracle(input);
        Rng classical_rng = trial_rng(cell.seed_base, within * 3 + 1);
        const TestOutcome classical = classical_test_pa(oracle, cell.a, cfg, classical_rng);
        TrialRecord c = base;
        c.mode = "classical";
        c.verdict = classical.accepted() ? "accept" : "reject";
        c.queries = classical.queries();
        c.wall_ms = elapsed_ms(t0);

        const auto t1 = std::chrono::steady_clock::now();
        Rng quantum_rng = trial_rng(cell.seed_base, within * 3 + 2);
        const TestOutcome quantum = quantum_test_pa(input, cell.a, cfg, quantum_rng);
        TrialRecord q = base;
        q.mode = "quantum";
        q.verdict = quantum.accepted() ? "accept" : "reject";
        q.queries = quantum.queries();
        q.wall_ms = elapsed_ms(t1);

        records[static_cast<std::size_t>(item) * 2] = std::move(c);
        records[static_cast<std::size_t>(item) * 2 + 1] = std::move(q);
        } catch (...) {
#pragma omp critical
            if (failure == nullptr) failure = std::current_exception();
        }
    }
    if (failure != nullptr) std::rethrow_exception(failure);
    return records;
}

namespace {

// A deterministic depth-q strategy: heap-indexed query positions plus a
// verdict per leaf.
struct Strategy {
    int depth;
    std::vector<std::uint32_t> positions;   // 2^q - 1 nodes
    std::vector<bool> accept_leaf;          // 2^q leaves

    static Strategy random(int depth, std::size_t input_length, Rng& rng) {
        Strategy s;
        s.depth = depth;
        const std::size_t nodes = (std::size_t{1} << depth) - 1;
        s.positions.resize(nodes);
        for (auto& p : s.positions) p = static_cast<std::uint32_t>(rng.below(input_length));
        s.accept_leaf.resize(std::size_t{1} << depth);
        for (std::size_t l = 0; l < s.accept_leaf.size(); ++l) s.accept_leaf[l] = rng.flip();
        return s;
    }

    bool accepts(const BooleanFunction& f) const {
        std::size_t node = 1;
        for (int step = 0; step < depth; ++step) {
            const bool bit = f.at(positions[node - 1]);
            node = 2 * node + (bit ? 1 : 0);
        }
        return accept_leaf[node - (std::size_t{1} << depth)];
    }
};

} // namespace

BiasResult run_bias_experiment(const BiasParams& params) {
    if (params.n < 1 || params.n > 8) throw std::invalid_argument("bias experiment: n must be in [1, 8]");
    if (params.depth < 0) throw std::invalid_argument("bias experiment: depth must be nonnegative");
    set_workers(params.workers);

    const std::size_t N = std::size_t{1} << params.n;
    BiasResult result;
    result.records.resize(static_cast<std::size_t>(params.strategies));

    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long m = 0; m < params.strategies; ++m) {
        if (failure != nullptr) continue;
        try {
        Rng rng = trial_rng(params.seed, static_cast<std::uint64_t>(m));
        const Strategy strategy = Strategy::random(params.depth, N, rng);

        std::size_t accept_p = 0;
        std::size_t accept_u = 0;
        for (std::size_t i = 0; i < params.samples; ++i) {
            if (strategy.accepts(sample_p(params.n, rng).f)) ++accept_p;
            if (strategy.accepts(sample_u(params.n, rng))) ++accept_u;
        }
        const double pr_p = static_cast<double>(accept_p) / static_cast<double>(params.samples);
        const double pr_u = static_cast<double>(accept_u) / static_cast<double>(params.samples);

        TrialRecord r;
        r.experiment = "bias";
        r.n = params.n;
        r.eps = 0.0;
        r.mode = "bias";
        r.cohort = "n/a";
        r.trial = static_cast<std::uint64_t>(m);
        r.seed = params.seed;
        r.verdict = "n/a";
        r.queries = static_cast<std::uint64_t>(params.depth);
        r.extras["accept_p"] = pr_p;
        r.extras["accept_u"] = pr_u;
        r.extras["bias"] = std::abs(pr_p - pr_u);
        result.records[static_cast<std::size_t>(m)] = std::move(r);
        } catch (...) {
#pragma omp critical
            if (failure == nullptr) failure = std::current_exception();
        }
    }
    if (failure != nullptr) std::rethrow_exception(failure);

    for (const auto& r : result.records)
        result.max_bias = std::max(result.max_bias, r.extras.at("bias"));
    return result;
}

} // namespace qpt
