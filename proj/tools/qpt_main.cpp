// qpt: command-line front end for the property-testing lab.

#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "qpt/dwise.hpp"
#include "qpt/f2core.hpp"
#include "qpt/hadamard_tester.hpp"
#include "qpt/harness.hpp"
#include "qpt/lemma_checks.hpp"
#include "qpt/simon_tester.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
    std::uint64_t seed = qpt::default_seed();
    std::size_t trials = 100;
    int workers = 0;
    std::string out_path;   // JSONL
    std::string csv_path;
    bool json_stdout = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_trials = true) {
    cmd->add_option("--seed", opts.seed, "Master seed (default from QPT_SEED, else 1)")
        ->envname("QPT_SEED");
    if (with_trials) cmd->add_option("--trials", opts.trials, "Number of seeded trials");
    cmd->add_option("--workers", opts.workers, "Worker threads (0 = library default)");
    cmd->add_option("--out", opts.out_path, "Write per-trial records as JSON Lines");
    cmd->add_option("--csv", opts.csv_path, "Write a CSV projection of the records");
    cmd->add_flag("--json", opts.json_stdout, "Machine-readable summary on stdout");
}

void emit_records(const std::vector<qpt::TrialRecord>& records, const CommonOpts& opts) {
    if (!opts.out_path.empty()) qpt::persist_file(records, opts.out_path);
    if (!opts.csv_path.empty()) {
        std::ofstream csv(opts.csv_path);
        if (!csv) throw std::runtime_error("cannot open for writing: " + opts.csv_path);
        qpt::write_csv(records, csv);
    }
}

json summary_to_json(const qpt::ExperimentSummary& s) {
    return json{{"experiment", s.experiment}, {"n", s.n},
                {"eps", s.eps},               {"mode", s.mode},
                {"cohort", s.cohort},         {"trials", s.trials},
                {"accept_frequency", s.accept_frequency},
                {"mean_queries", s.mean_queries},
                {"max_queries", s.max_queries},
                {"ci_low", s.ci_low},         {"ci_high", s.ci_high}};
}

void print_summaries(const std::vector<qpt::TrialRecord>& records, const CommonOpts& opts) {
    const auto summaries = qpt::summarize(records);
    if (opts.json_stdout) {
        json out = json::array();
        for (const auto& s : summaries) out.push_back(summary_to_json(s));
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::printf("%-14s %6s %6s %-10s %-7s %7s %8s %9s %6s  95%% CI\n", "experiment", "n", "eps", "mode",
                "cohort", "trials", "accept", "mean q", "max q");
    for (const auto& s : summaries)
        std::printf("%-14s %6d %6g %-10s %-7s %7zu %8.4f %9.2f %6llu  [%.3f, %.3f]\n", s.experiment.c_str(),
                    s.n, s.eps, s.mode.c_str(), s.cohort.c_str(), s.trials, s.accept_frequency,
                    s.mean_queries, static_cast<unsigned long long>(s.max_queries), s.ci_low, s.ci_high);
}

enum class InputSource { file, member, far };

int run_test_hadamard(int n, const std::string& a_file, double eps, const std::string& mode,
                      InputSource source, const std::string& input_path, const CommonOpts& opts) {
    if (n < 2 || (n & (n - 1)) != 0) throw std::runtime_error("--n must be a power of two >= 2");
    const int log_n = std::countr_zero(static_cast<unsigned>(n));
    const auto a = qpt::load_a_set_file(a_file, log_n);
    std::vector<qpt::BitString> members;
    for (const auto& y : a) members.push_back(qpt::hadamard_encode(y));

    qpt::BitString fixed_input;
    if (source == InputSource::file) {
        const qpt::BooleanFunction f = qpt::BooleanFunction::load_file(input_path);
        if (f.domain_bits() != log_n)
            throw std::runtime_error("input table has n=" + std::to_string(f.domain_bits()) +
                                     ", expected n=" + std::to_string(log_n));
        fixed_input = f.table();
    }

    const qpt::TesterConfig cfg = qpt::TesterConfig::for_epsilon(eps, opts.seed);
    std::vector<qpt::TrialRecord> records(opts.trials);
#ifdef _OPENMP
    if (opts.workers > 0) omp_set_num_threads(opts.workers);
#endif
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < static_cast<long long>(opts.trials); ++t) {
        if (failure != nullptr) continue;
        try {
        const std::uint64_t trial_seed = qpt::Rng::stream_seed(opts.seed, static_cast<std::uint64_t>(t));
        qpt::Rng rng(trial_seed);
        qpt::BitString input;
        std::string cohort;
        switch (source) {
            case InputSource::file:
                input = fixed_input;
                cohort = "file";
                break;
            case InputSource::member:
                input = qpt::hadamard_encode(a[rng.below(a.size())]);
                cohort = "member";
                break;
            case InputSource::far:
                input = qpt::sample_far_from_pa(static_cast<std::size_t>(n), a, eps, rng);
                cohort = "far";
                break;
        }
        qpt::TestOutcome outcome;
        if (mode == "classical") {
            qpt::QueryOracle oracle(input);
            outcome = qpt::classical_test_pa(oracle, a, cfg, rng);
        } else if (mode == "quantum") {
            outcome = qpt::quantum_test_pa(input, a, cfg, rng);
        } else {
            qpt::QueryOracle oracle(input);
            outcome = qpt::generic_test(oracle, members, cfg, rng);
        }
        qpt::TrialRecord r;
        r.experiment = "test-hadamard";
        r.n = n;
        r.eps = eps;
        r.mode = mode;
        r.cohort = cohort;
        r.trial = static_cast<std::uint64_t>(t);
        r.seed = trial_seed;
        r.verdict = outcome.accepted() ? "accept" : "reject";
        r.queries = outcome.queries();
        records[static_cast<std::size_t>(t)] = std::move(r);
        } catch (...) {
#pragma omp critical
            if (failure == nullptr) failure = std::current_exception();
        }
    }
    if (failure != nullptr) std::rethrow_exception(failure);
    emit_records(records, opts);
    print_summaries(records, opts);
    return 0;
}

int run_test_simon(int n, double eps, InputSource source, const std::string& input_path, bool exact,
                   const CommonOpts& opts) {
    // The workspace for a run can reach 2n+1 qubits; keep it desk-scale.
    if (n < 1 || n > 8) throw std::runtime_error("--n must be in [1, 8]");

    std::optional<qpt::BooleanFunction> fixed;
    if (source == InputSource::file) {
        fixed = qpt::BooleanFunction::load_file(input_path);
        if (fixed->domain_bits() != n)
            throw std::runtime_error("input table has n=" + std::to_string(fixed->domain_bits()) +
                                     ", expected n=" + std::to_string(n));
    }

    if (exact) {
        if (source != InputSource::file)
            throw std::runtime_error("--exact needs a fixed --input table");
        const double p = qpt::main_program_exact_accept(*fixed, eps);
        if (opts.json_stdout) {
            std::cout << json{{"experiment", "test-simon"},
                              {"n", n},
                              {"eps", eps},
                              {"exact_accept_probability", p},
                              {"member", qpt::is_member(*fixed)},
                              {"distance", qpt::distance_to_l(*fixed)}}
                             .dump(2)
                      << "\n";
        } else {
            std::printf("exact acceptance probability: %.12g\n", p);
            std::printf("member: %s, distance to the language: %ld\n",
                        qpt::is_member(*fixed) ? "yes" : "no", qpt::distance_to_l(*fixed));
        }
        return 0;
    }

    qpt::XDistributionCache shared_cache;   // reused when the input is fixed
    std::vector<qpt::TrialRecord> records(opts.trials);
#ifdef _OPENMP
    if (opts.workers > 0) omp_set_num_threads(opts.workers);
#endif
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long t = 0; t < static_cast<long long>(opts.trials); ++t) {
        if (failure != nullptr) continue;
        try {
        const std::uint64_t trial_seed = qpt::Rng::stream_seed(opts.seed, static_cast<std::uint64_t>(t));
        qpt::Rng rng(trial_seed);
        qpt::BooleanFunction f = qpt::BooleanFunction::zero(n);
        std::string cohort;
        switch (source) {
            case InputSource::file:
                f = *fixed;
                cohort = "file";
                break;
            case InputSource::member:
                f = qpt::sample_p(n, rng).f;
                cohort = "member";
                break;
            case InputSource::far:
                f = qpt::sample_far_from_l(n, eps, rng);
                cohort = "far";
                break;
        }
        qpt::XDistributionCache local_cache;
        qpt::SimonOptions simon_opts;
        simon_opts.cache = source == InputSource::file ? &shared_cache : &local_cache;
        const qpt::SimonOutcome outcome = qpt::main_program(f, eps, rng, simon_opts);

        qpt::TrialRecord r;
        r.experiment = "test-simon";
        r.n = n;
        r.eps = eps;
        r.mode = "simon";
        r.cohort = cohort;
        r.trial = static_cast<std::uint64_t>(t);
        r.seed = trial_seed;
        r.verdict = outcome.verdict == qpt::Verdict::accept ? "accept" : "reject";
        r.queries = outcome.oracle_calls;
        records[static_cast<std::size_t>(t)] = std::move(r);
        } catch (...) {
#pragma omp critical
            if (failure == nullptr) failure = std::current_exception();
        }
    }
    if (failure != nullptr) std::rethrow_exception(failure);
    emit_records(records, opts);
    print_summaries(records, opts);
    return 0;
}

int run_dwise_gen(int k, int t, const std::string& out_path) {
    const qpt::DWiseSpace space(k, t);
    const auto members = qpt::property_members(space);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    for (const auto& m : members) out << m.lsb_first() << "\n";
    std::printf("k=%d t=%d: n=%d positions, d=%d, |Omega|=%llu, %zu distinct members -> %s\n", k, t,
                space.positions(), space.independence(),
                static_cast<unsigned long long>(space.size()), members.size(), out_path.c_str());
    return 0;
}

int run_dwise_verify(int k, int t, int d, bool json_stdout) {
    const qpt::DWiseSpace space(k, t);
    if (d <= 0) d = space.independence();
    const qpt::DwiseReport report = qpt::verify_dwise(space, d);
    const bool witness = qpt::classical_lb_witness(space, std::min(d, space.positions()));
    if (json_stdout) {
        std::cout << json{{"k", k},
                          {"t", t},
                          {"d", d},
                          {"size", space.size()},
                          {"independent", report.pass},
                          {"detail", report.detail},
                          {"all_patterns_realized", witness}}
                         .dump(2)
                  << "\n";
    } else {
        std::printf("|Omega| = %llu (= 2(n+1)^t with n=%d)\n",
                    static_cast<unsigned long long>(space.size()), space.positions());
        std::printf("%d-wise independence: %s%s%s\n", d, report.pass ? "PASS" : "FAIL",
                    report.pass ? "" : " — ", report.detail.c_str());
        std::printf("every %d-position pattern realized: %s\n", std::min(d, space.positions()),
                    witness ? "PASS" : "FAIL");
    }
    return report.pass && witness ? 0 : 1;
}

int run_dwise_gap(int k, int t, int max_degree, bool json_stdout) {
    const qpt::DWiseSpace space(k, t);
    if (max_degree < 0 || max_degree > space.positions())
        throw std::runtime_error("--max-degree out of range");
    if (space.positions() > 15 || max_degree > 6)
        throw std::runtime_error("gap scan limited to n <= 15, degree <= 6");

    json rows = json::array();
    for (int deg = 0; deg <= max_degree; ++deg) {
        double max_abs = 0.0;
        std::vector<int> witness;
        std::vector<int> idx(static_cast<std::size_t>(deg));
        for (int i = 0; i < deg; ++i) idx[static_cast<std::size_t>(i)] = i;
        bool done = deg > space.positions();
        while (!done) {
            const qpt::MonomialGap g = qpt::monomial_gap(space, qpt::Monomial{idx});
            if (std::abs(g.gap) > max_abs) {
                max_abs = std::abs(g.gap);
                witness = idx;
            }
            if (deg == 0) break;
            int pos = deg - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == space.positions() - deg + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < deg; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
        rows.push_back({{"degree", deg}, {"max_abs_gap", max_abs}, {"witness", witness}});
        if (!json_stdout) std::printf("degree %2d: max |gap| = %.12g\n", deg, max_abs);
    }
    if (json_stdout) std::cout << rows.dump(2) << "\n";
    return 0;
}

int run_experiment_separation(const std::vector<int>& n_values, const std::vector<double>& eps_values,
                              const CommonOpts& opts) {
    qpt::SeparationParams params;
    params.n_values = n_values;
    params.eps_values = eps_values;
    params.trials_per_cell = opts.trials;
    params.seed = opts.seed;
    params.workers = opts.workers;
    const auto records = qpt::run_separation_hadamard(params);
    emit_records(records, opts);
    print_summaries(records, opts);
    return 0;
}

int run_experiment_bias(int n, int depth, int strategies, std::size_t samples, const CommonOpts& opts) {
    qpt::BiasParams params;
    params.n = n;
    params.depth = depth;
    params.strategies = strategies;
    params.samples = samples;
    params.seed = opts.seed;
    params.workers = opts.workers;
    const qpt::BiasResult result = qpt::run_bias_experiment(params);
    emit_records(result.records, opts);
    if (opts.json_stdout) {
        std::cout << json{{"experiment", "bias"},
                          {"n", n},
                          {"depth", depth},
                          {"strategies", strategies},
                          {"samples", samples},
                          {"max_bias", result.max_bias}}
                         .dump(2)
                  << "\n";
    } else {
        std::printf("max |Pr_P[accept] - Pr_U[accept]| over %d depth-%d strategies: %.6f\n", strategies,
                    depth, result.max_bias);
    }
    return 0;
}

int run_verify_lemmas(std::uint64_t seed, bool json_stdout) {
    const auto results = qpt::run_lemma_checks(seed);
    bool all = true;
    json rows = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        if (json_stdout) {
            rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        } else {
            std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                        r.detail.empty() ? "" : " — ", r.detail.c_str());
        }
    }
    if (json_stdout) std::cout << rows.dump(2) << "\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Property-testing lab: classical and quantum query testers"};
    app.require_subcommand(1);

    // test hadamard / test simon
    auto* test = app.add_subcommand("test", "Run a tester on inputs");
    test->require_subcommand(1);

    auto* hadamard = test->add_subcommand("hadamard", "Testers for codeword subsets");
    int had_n = 16;
    std::string had_a_file;
    double had_eps = 0.1;
    std::string had_mode;
    std::string had_input;
    bool had_member = false, had_far = false;
    CommonOpts had_opts;
    hadamard->add_option("--n", had_n, "Input length (power of two)")->required();
    hadamard->add_option("--a-file", had_a_file, "File with one log2(n)-bit string per line")->required();
    hadamard->add_option("--eps", had_eps, "Distance parameter in (0,1)");
    hadamard->add_option("--mode", had_mode, "classical | quantum | generic")
        ->required()
        ->check(CLI::IsMember({"classical", "quantum", "generic"}));
    auto* had_in = hadamard->add_option("--input", had_input, "Truth-table file for a fixed input");
    auto* had_mem = hadamard->add_flag("--sample-member", had_member, "Sample a fresh member per trial");
    auto* had_farf = hadamard->add_flag("--sample-far", had_far, "Sample a fresh far input per trial");
    had_in->excludes(had_mem)->excludes(had_farf);
    had_mem->excludes(had_farf);
    add_common(hadamard, had_opts);

    auto* simon = test->add_subcommand("simon", "Tester for shift-invariant functions");
    int sim_n = 4;
    double sim_eps = 0.125;
    std::string sim_input;
    bool sim_member = false, sim_far = false, sim_exact = false;
    CommonOpts sim_opts;
    simon->add_option("--n", sim_n, "Domain bits (input length is 2^n)")->required();
    simon->add_option("--eps", sim_eps, "Distance parameter in (0,1)");
    auto* sim_in = simon->add_option("--input", sim_input, "Truth-table file for a fixed input");
    auto* sim_mem = simon->add_flag("--sample-member", sim_member, "Sample a fresh member per trial");
    auto* sim_farf = simon->add_flag("--sample-far", sim_far, "Sample a fresh far input per trial");
    simon->add_flag("--exact", sim_exact, "Exact acceptance probability (n <= 3, fixed input)");
    sim_in->excludes(sim_mem)->excludes(sim_farf);
    sim_mem->excludes(sim_farf);
    add_common(simon, sim_opts);

    // dwise gen | verify | gap
    auto* dwise = app.add_subcommand("dwise", "d-wise independent sample spaces");
    dwise->require_subcommand(1);
    auto* dgen = dwise->add_subcommand("gen", "Emit the property to a file");
    int dw_k = 3, dw_t = 1;
    std::string dw_out;
    dgen->add_option("--k", dw_k, "Field degree; n = 2^k - 1")->required();
    dgen->add_option("--t", dw_t, "Half degree; d = 2t + 1")->required();
    dgen->add_option("--out", dw_out, "Output path, one member per line")->required();

    auto* dverify = dwise->add_subcommand("verify", "Verify exact d-wise independence");
    int dv_k = 3, dv_t = 1, dv_d = 0;
    bool dv_json = false;
    dverify->add_option("--k", dv_k)->required();
    dverify->add_option("--t", dv_t)->required();
    dverify->add_option("--d", dv_d, "Subset size to verify (default 2t+1)");
    dverify->add_flag("--json", dv_json);

    auto* dgap = dwise->add_subcommand("gap", "Monomial expectation gaps vs uniform");
    int dg_k = 3, dg_t = 1, dg_max = 4;
    bool dg_json = false;
    dgap->add_option("--k", dg_k)->required();
    dgap->add_option("--t", dg_t)->required();
    dgap->add_option("--max-degree", dg_max);
    dgap->add_flag("--json", dg_json);

    // experiment separation | bias
    auto* experiment = app.add_subcommand("experiment", "Multi-configuration experiments");
    experiment->require_subcommand(1);

    auto* separation = experiment->add_subcommand("separation", "Query counts: classical vs quantum");
    std::vector<int> sep_n{8, 16, 32, 64};
    std::vector<double> sep_eps{0.1};
    CommonOpts sep_opts;
    separation->add_option("--n", sep_n, "Input lengths (powers of two)")->delimiter(',');
    separation->add_option("--eps", sep_eps, "Distance parameters")->delimiter(',');
    add_common(separation, sep_opts);

    auto* bias = experiment->add_subcommand("bias", "Depth-q strategy bias between P and U");
    int bias_n = 6, bias_depth = 5, bias_strategies = 100;
    std::size_t bias_samples = 10000;
    CommonOpts bias_opts;
    bias->add_option("--n", bias_n, "Domain bits (N = 2^n positions)");
    bias->add_option("--depth", bias_depth, "Queries per strategy");
    bias->add_option("--strategies", bias_strategies, "Number of random strategies");
    bias->add_option("--samples", bias_samples, "Samples per distribution per strategy");
    add_common(bias, bias_opts, /*with_trials=*/false);

    // verify lemmas
    auto* verify = app.add_subcommand("verify", "Construction-level verification suites");
    verify->require_subcommand(1);
    auto* lemmas = verify->add_subcommand("lemmas", "Run every invariant suite");
    std::uint64_t lemma_seed = qpt::default_seed();
    bool lemma_json = false;
    lemmas->add_option("--seed", lemma_seed)->envname("QPT_SEED");
    lemmas->add_flag("--json", lemma_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (hadamard->parsed()) {
            InputSource src = InputSource::file;
            if (had_member) src = InputSource::member;
            else if (had_far) src = InputSource::far;
            else if (had_input.empty())
                throw std::runtime_error("choose an input: --input, --sample-member or --sample-far");
            return run_test_hadamard(had_n, had_a_file, had_eps, had_mode, src, had_input, had_opts);
        }
        if (simon->parsed()) {
            InputSource src = InputSource::file;
            if (sim_member) src = InputSource::member;
            else if (sim_far) src = InputSource::far;
            else if (sim_input.empty())
                throw std::runtime_error("choose an input: --input, --sample-member or --sample-far");
            return run_test_simon(sim_n, sim_eps, src, sim_input, sim_exact, sim_opts);
        }
        if (dgen->parsed()) return run_dwise_gen(dw_k, dw_t, dw_out);
        if (dverify->parsed()) return run_dwise_verify(dv_k, dv_t, dv_d, dv_json);
        if (dgap->parsed()) return run_dwise_gap(dg_k, dg_t, dg_max, dg_json);
        if (separation->parsed()) return run_experiment_separation(sep_n, sep_eps, sep_opts);
        if (bias->parsed()) return run_experiment_bias(bias_n, bias_depth, bias_strategies, bias_samples, bias_opts);
        if (lemmas->parsed()) return run_verify_lemmas(lemma_seed, lemma_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
