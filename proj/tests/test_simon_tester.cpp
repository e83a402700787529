#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

#include "qpt/harness.hpp"
#include "qpt/lemma_checks.hpp"
#include "qpt/simon_tester.hpp"

using namespace qpt;

namespace {

BooleanFunction from_table(int n, const std::string& table) {
    return BooleanFunction(n, BitString::parse_lsb_first(table));
}

// Every table of length 2^n that has a nontrivial invariance shift.
std::vector<BooleanFunction> enumerate_language(int n) {
    std::vector<BooleanFunction> members;
    const std::size_t N = std::size_t{1} << n;
    for (std::uint64_t table = 0; table < (std::uint64_t{1} << N); ++table) {
        BooleanFunction f(n, BitString::from_value(N, table));
        if (is_member(f)) members.push_back(std::move(f));
    }
    return members;
}

long enumeration_distance(const BooleanFunction& f, const std::vector<BooleanFunction>& language) {
    long best = static_cast<long>(f.size());
    for (const auto& g : language)
        best = std::min(best, static_cast<long>(BitString::hamming(f.table(), g.table())));
    return best;
}

} // namespace

TEST_CASE("pair agreement counts") {
    Rng rng(1);
    const BooleanFunction f = BooleanFunction::random(3, rng);
    CHECK(n_s(f, BitString(3)) == 8);   // s = 0 pairs every point with itself

    BooleanFunction ones(4, BitString::parse_lsb_first("1111111111111111"));
    for (std::uint64_t sv = 0; sv < 16; ++sv)
        CHECK(n_s(ones, BitString::from_value(4, sv)) == 16);

    const BooleanFunction g = from_table(2, "0001");
    CHECK(n_s(g, BitString::from_value(2, 1)) == 2);
}

TEST_CASE("membership and promise sets") {
    SUBCASE("constant functions have the full promise space") {
        const BooleanFunction f = BooleanFunction::zero(3);
        CHECK(is_member(f));
        const PromiseSet promise = promise_set(f);
        CHECK(promise.s_space.dimension() == 3);
        CHECK(promise.s_perp.dimension() == 0);
    }
    SUBCASE("0110 is invariant under 11") {
        const BooleanFunction f = from_table(2, "0110");
        CHECK(is_member(f));
        const PromiseSet promise = promise_set(f);
        CHECK(promise.s_space.contains(BitString::parse_msb_first("11")));
        CHECK(promise.s_space.dimension() + promise.s_perp.dimension() == 2);
    }
    SUBCASE("0001 is not a member") {
        CHECK_FALSE(is_member(from_table(2, "0001")));
    }
}

TEST_CASE("distance to the invariant language") {
    SUBCASE("members are at distance zero") {
        CHECK(distance_to_l(from_table(2, "0110")) == 0);
        CHECK(distance_to_l(BooleanFunction::zero(4)) == 0);
    }
    SUBCASE("0001 is one repair away") {
        CHECK(distance_to_l(from_table(2, "0001")) == 1);
    }
    SUBCASE("language size at n=3 matches the subspace-lattice count") {
        CHECK(enumerate_language(3).size() == 72);
    }
    SUBCASE("pair-repair formula equals full enumeration at n=3 (exhaustive) and n=4") {
        const auto language3 = enumerate_language(3);
        for (std::uint64_t table = 0; table < 256; ++table) {
            const BooleanFunction f(3, BitString::from_value(8, table));
            CHECK(distance_to_l(f) == enumeration_distance(f, language3));
        }
        const auto language4 = enumerate_language(4);
        Rng rng(2);
        for (int rep = 0; rep < 50; ++rep) {
            const BooleanFunction f = BooleanFunction::random(4, rng);
            CHECK(distance_to_l(f) == enumeration_distance(f, language4));
        }
    }
}

TEST_CASE("subroutine Q") {
    SUBCASE("constant f with an empty basis always measures zero") {
        const BooleanFunction f = BooleanFunction::zero(3);
        const Basis empty(3);
        CHECK(q_premeasure_state(f, empty).x_distribution().p[0] == doctest::Approx(1.0).epsilon(1e-12));
        Rng rng(3);
        for (int rep = 0; rep < 20; ++rep) CHECK(subroutine_q(f, empty, rng).is_zero());
    }
    SUBCASE("members only produce outcomes orthogonal to the promise") {
        Rng rng(4);
        for (int rep = 0; rep < 5; ++rep) {
            const PairedSample member = sample_p(4, rng);
            const Basis empty(4);
            const OutcomeDistribution dist = q_premeasure_state(member.f, empty).x_distribution();
            for (std::size_t v = 0; v < dist.p.size(); ++v) {
                if (dist.p[v] < 1e-12) continue;
                const BitString z = BitString::from_value(4, v);
                CHECK(inner_product(z, member.s) == 0);
            }
            for (int draw = 0; draw < 200; ++draw) {
                const BitString z = subroutine_q(member.f, empty, rng);
                if (!z.is_zero()) CHECK(inner_product(z, member.s) == 0);
            }
        }
    }
    SUBCASE("malformed basis is a usage error") {
        const BooleanFunction f = BooleanFunction::zero(3);
        CHECK_THROWS_AS(q_premeasure_state(f, Basis(2)), std::invalid_argument);
    }
}

TEST_CASE("closed-form state") {
    SUBCASE("zero function with no basis vectors is exactly the origin state") {
        const QuantumState st = closed_form_state(BooleanFunction::zero(3), Basis(3));
        CHECK(st.amplitude(0) == std::complex<double>{1.0, 0.0});
        for (std::size_t i = 1; i < st.dimension(); ++i)
            CHECK(st.amplitude(i) == std::complex<double>{0.0, 0.0});
    }
    SUBCASE("unit norm and equality with the simulated state") {
        Rng rng(5);
        for (int n = 2; n <= 4; ++n) {
            for (int rep = 0; rep < 30; ++rep) {
                const BooleanFunction f = BooleanFunction::random(n, rng);
                const Basis basis = random_reduced_basis(static_cast<std::size_t>(n), rng);
                const QuantumState direct = closed_form_state(f, basis);
                CHECK(direct.norm() == doctest::Approx(1.0).epsilon(1e-10));
                const QuantumState simulated = q_premeasure_state(f, basis);
                double dev = 0.0;
                for (std::size_t i = 0; i < direct.dimension(); ++i)
                    dev = std::max(dev, std::abs(direct.amplitude(i) - simulated.amplitude(i)));
                CHECK(dev < 1e-10);
            }
        }
    }
}

TEST_CASE("measurement distribution from the coset structure alone") {
    // Independent derivation: outcomes y vanish at every pivot coordinate,
    // and Pr[y] = (2^k/N^2) * sum over (value, cell) of the squared signed
    // count sum_{x in cell, f(x)=value} (-1)^{x.y}.
    Rng rng(21);
    for (int n = 2; n <= 4; ++n) {
        const std::size_t N = std::size_t{1} << n;
        for (int rep = 0; rep < 15; ++rep) {
            const BooleanFunction f = BooleanFunction::random(n, rng);
            const Basis basis = random_reduced_basis(static_cast<std::size_t>(n), rng);
            const CosetPartition part = coset_partition(basis, n);

            std::uint64_t pivot_mask = 0;
            for (std::size_t l : basis.leading()) pivot_mask |= std::uint64_t{1} << l;

            const OutcomeDistribution dist = q_premeasure_state(f, basis).x_distribution();
            const double scale = static_cast<double>(part.cells) / (static_cast<double>(N) * N);
            for (std::size_t y = 0; y < N; ++y) {
                double expected = 0.0;
                if ((y & pivot_mask) == 0) {
                    for (std::size_t cell = 0; cell < part.cells; ++cell) {
                        for (int value = 0; value < 2; ++value) {
                            long signed_count = 0;
                            for (std::size_t x = 0; x < N; ++x) {
                                if (part.cell_of[x] != cell || f.at(x) != (value == 1)) continue;
                                signed_count += (std::popcount(x & y) & 1) ? -1 : 1;
                            }
                            expected += scale * static_cast<double>(signed_count) *
                                        static_cast<double>(signed_count);
                        }
                    }
                }
                CHECK(dist.p[y] == doctest::Approx(expected).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("coset partitions") {
    SUBCASE("empty basis gives one all-covering cell") {
        const CosetPartition part = coset_partition(Basis(3), 3);
        CHECK(part.cells == 1);
        CHECK(is_coset_constant(BooleanFunction::zero(3), Basis(3)));
        CHECK_FALSE(is_coset_constant(from_table(3, "00000001"), Basis(3)));
    }
    SUBCASE("cells are cosets of equal size N / 2^k") {
        Rng rng(6);
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 3 + rng.below(2);
            const Basis basis = random_reduced_basis(n, rng);
            const CosetPartition part = coset_partition(basis, static_cast<int>(n));
            std::vector<std::size_t> sizes(part.cells, 0);
            for (std::uint32_t cell : part.cell_of) ++sizes[cell];
            for (std::size_t s : sizes) CHECK(s == (std::size_t{1} << n) >> basis.dimension());
        }
    }
}

TEST_CASE("repetition cap") {
    CHECK(simon_l_max(1, 0.5) == 1);    // floored
    CHECK(simon_l_max(4, 0.125) == 256);
    CHECK(simon_l_max(5, 0.125) == 298);
    CHECK_THROWS_AS(simon_l_max(3, 0.0), std::invalid_argument);
}

TEST_CASE("main program") {
    SUBCASE("constant member accepts in round zero after the full zero streak") {
        Rng rng(7);
        const BooleanFunction f = BooleanFunction::zero(4);
        const SimonOutcome out = main_program(f, 0.25, rng);
        CHECK(out.verdict == Verdict::accept);
        CHECK(out.extensions == 0);
        CHECK(out.oracle_calls == simon_l_max(4, 0.25));
    }
    SUBCASE("members always accept, with promise checks armed") {
        Rng rng(8);
        for (int n = 3; n <= 4; ++n) {
            for (int rep = 0; rep < 10; ++rep) {
                const PairedSample member = sample_p(n, rng);
                const PromiseSet promise = promise_set(member.f);
                XDistributionCache cache;
                SimonOptions opts;
                opts.promise = &promise;
                opts.cache = &cache;
                for (std::uint64_t seed = 0; seed < 30; ++seed) {
                    Rng run_rng = Rng::for_stream(seed, static_cast<std::uint64_t>(rep));
                    const SimonOutcome out = main_program(member.f, 0.25, run_rng, opts);
                    REQUIRE(out.verdict == Verdict::accept);
                    REQUIRE(out.oracle_calls <= 4 * simon_l_max(4, 0.25));
                }
            }
        }
    }
    SUBCASE("far inputs are rejected well over 2/3 of the time") {
        Rng setup(9);
        const double eps = 0.125;
        for (int rep = 0; rep < 3; ++rep) {
            const BooleanFunction f = sample_far_from_l(4, eps, setup);
            XDistributionCache cache;
            SimonOptions opts;
            opts.cache = &cache;
            std::size_t rejects = 0;
            const std::size_t runs = 60;
            for (std::uint64_t seed = 0; seed < runs; ++seed) {
                Rng rng = Rng::for_stream(1000 + seed, static_cast<std::uint64_t>(rep));
                const SimonOutcome out = main_program(f, eps, rng, opts);
                if (out.verdict == Verdict::reject) ++rejects;
                CHECK(out.oracle_calls <= 4 * simon_l_max(4, eps));
            }
            CHECK(rejects * 3 >= runs * 2);
        }
    }
    SUBCASE("cache refuses to mix functions") {
        XDistributionCache cache;
        Rng rng(41);
        cache.get(BooleanFunction::zero(3), Basis(3));
        CHECK_THROWS_AS(cache.get(BooleanFunction::random(3, rng), Basis(3)), std::logic_error);
    }
    SUBCASE("cache does not change sampled behavior") {
        Rng setup(10);
        const BooleanFunction f = sample_far_from_l(3, 0.125, setup);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Rng rng_plain(seed);
            const SimonOutcome plain = main_program(f, 0.25, rng_plain);
            XDistributionCache cache;
            SimonOptions opts;
            opts.cache = &cache;
            Rng rng_cached(seed);
            const SimonOutcome cached = main_program(f, 0.25, rng_cached, opts);
            CHECK(plain.verdict == cached.verdict);
            CHECK(plain.oracle_calls == cached.oracle_calls);
            CHECK(plain.extensions == cached.extensions);
        }
    }
}

TEST_CASE("exact acceptance probability") {
    SUBCASE("members have exact acceptance one") {
        for (const char* table : {"0110", "0000", "1111", "1001"}) {
            CHECK(main_program_exact_accept(from_table(2, table), 0.25) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
        // every member at n=3
        int members_checked = 0;
        for (std::uint64_t table = 0; table < 256; ++table) {
            const BooleanFunction f(3, BitString::from_value(8, table));
            if (!is_member(f)) continue;
            ++members_checked;
            CHECK(main_program_exact_accept(f, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(members_checked == 72);
    }
    SUBCASE("far functions at n=3 accept with probability at most 1/3") {
        for (std::uint64_t table = 0; table < 256; ++table) {
            const BooleanFunction f(3, BitString::from_value(8, table));
            if (distance_to_l(f) < 1) continue;   // N/8 = 1
            CHECK(main_program_exact_accept(f, 0.125) <= 1.0 / 3.0);
        }
    }
    SUBCASE("monte carlo agrees with the exact probability") {
        Rng setup(11);
        const BooleanFunction f = sample_far_from_l(3, 0.2, setup);
        const double eps = 0.35;
        const double exact = main_program_exact_accept(f, eps);
        XDistributionCache cache;
        SimonOptions opts;
        opts.cache = &cache;
        const int runs = 4000;
        int accepts = 0;
        for (int r = 0; r < runs; ++r) {
            Rng rng = Rng::for_stream(12, static_cast<std::uint64_t>(r));
            if (main_program(f, eps, rng, opts).verdict == Verdict::accept) ++accepts;
        }
        const double sigma = std::sqrt(std::max(exact * (1.0 - exact) * runs, 1.0));
        CHECK(std::abs(accepts - exact * runs) <= 5.0 * sigma);
    }
    SUBCASE("guarded to small n") {
        CHECK_THROWS_AS(main_program_exact_accept(BooleanFunction::zero(4), 0.25), std::invalid_argument);
    }
}

TEST_CASE("distribution samplers") {
    SUBCASE("paired samples are invariant under their shift by construction") {
        Rng rng(13);
        for (int rep = 0; rep < 100; ++rep) {
            const PairedSample sample = sample_p(5, rng);
            CHECK_FALSE(sample.s.is_zero());
            CHECK(n_s(sample.f, sample.s) == sample.f.size());
        }
    }
    SUBCASE("uniform bit marginals within 5 sigma") {
        Rng rng(14);
        const int samples = 10000;
        std::vector<int> ones(16, 0);
        for (int i = 0; i < samples; ++i) {
            const BooleanFunction f = sample_u(4, rng);
            for (std::size_t p = 0; p < 16; ++p)
                if (f.at(p)) ++ones[p];
        }
        const double sigma = std::sqrt(0.25 * samples);
        for (int count : ones) CHECK(std::abs(count - samples / 2) <= 5.0 * sigma);
    }
    SUBCASE("near-invariance under uniform sampling is rare and shrinks with n") {
        // Surrogate threshold 7/8: the chance that some shift agrees on at
        // least 7N/8 points.
        const int samples = 4000;
        std::vector<double> rates;
        for (const int n : {4, 6, 8}) {
            Rng rng(15);
            const std::size_t N = std::size_t{1} << n;
            int hits = 0;
            for (int i = 0; i < samples; ++i) {
                const BooleanFunction f = sample_u(n, rng);
                bool near = false;
                for (std::uint64_t sv = 1; sv < N && !near; ++sv)
                    near = 8 * n_s(f, BitString::from_value(static_cast<std::size_t>(n), sv)) >= 7 * N;
                if (near) ++hits;
            }
            rates.push_back(static_cast<double>(hits) / samples);
        }
        CHECK(rates[0] > rates[1]);
        CHECK(rates[1] >= rates[2]);
        CHECK(rates[2] <= 0.01);
    }
}

TEST_CASE("simon property spec: contains iff distance zero, exhaustive at N=8") {
    const PropertySpec spec = make_simon_property(3);
    for (std::uint64_t table = 0; table < 256; ++table) {
        const BitString x = BitString::from_value(8, table);
        CHECK(spec.contains(x) == (spec.distance(x) == 0));
    }
    Rng rng(16);
    for (int rep = 0; rep < 20; ++rep) {
        const BitString member = spec.sample_member(rng);
        CHECK(spec.distance(member) == 0);
    }
}
