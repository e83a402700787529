#include <doctest.h>

#include <cmath>
#include <set>

#include "qpt/f2core.hpp"
#include "qpt/hadamard_tester.hpp"
#include "qpt/harness.hpp"
#include "qpt/rng.hpp"

using namespace qpt;

namespace {

std::vector<BitString> make_a(std::size_t log_n, std::initializer_list<std::uint64_t> values) {
    std::vector<BitString> a;
    for (std::uint64_t v : values) a.push_back(BitString::from_value(log_n, v));
    return a;
}

std::vector<BitString> random_a(std::size_t log_n, std::size_t size, Rng& rng) {
    std::set<BitString> set;
    while (set.size() < size)
        set.insert(BitString::from_value(log_n, rng.below(std::uint64_t{1} << log_n)));
    return {set.begin(), set.end()};
}

} // namespace

TEST_CASE("config defaults") {
    const TesterConfig cfg = TesterConfig::for_epsilon(0.1);
    CHECK(cfg.blr_rounds == 20);
    CHECK(TesterConfig::for_epsilon(0.5).blr_rounds == 4);
    CHECK_THROWS_AS(TesterConfig::for_epsilon(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TesterConfig::for_epsilon(1.0), std::invalid_argument);
}

TEST_CASE("classical tester") {
    const std::size_t log_n = 4;   // n = 16
    const auto a = make_a(log_n, {3, 9, 12});
    const TesterConfig cfg = TesterConfig::for_epsilon(0.1);

    SUBCASE("members are always accepted, query budget exact") {
        for (const auto& y : a) {
            const BitString x = hadamard_encode(y);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                QueryOracle oracle(x);
                Rng rng(seed);
                const TestOutcome out = classical_test_pa(oracle, a, cfg, rng);
                REQUIRE(out.accepted());
                REQUIRE(out.queries() == 4 + 20);
            }
        }
    }
    SUBCASE("codeword outside A is rejected via the candidate") {
        const BitString x = hadamard_encode(BitString::from_value(log_n, 5));
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            QueryOracle oracle(x);
            Rng rng(seed);
            const TestOutcome out = classical_test_pa(oracle, a, cfg, rng);
            CHECK_FALSE(out.accepted());
            CHECK(out.queries() == 4 + 20);   // nonadaptive
        }
    }
    SUBCASE("far inputs are rejected at least 2/3 of the time, n=256") {
        Rng setup(404);
        const auto big_a = random_a(8, 128, setup);
        const TesterConfig big_cfg = TesterConfig::for_epsilon(0.1);
        std::size_t rejects = 0;
        const std::size_t trials = 1000;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = Rng::for_stream(17, t);
            const BitString x = sample_far_from_pa(256, big_a, 0.1, rng);
            QueryOracle oracle(x);
            const TestOutcome out = classical_test_pa(oracle, big_a, big_cfg, rng);
            if (!out.accepted()) ++rejects;
        }
        CHECK(rejects * 3 >= trials * 2);
    }
    SUBCASE("length must be a power of two") {
        const BitString x(12);
        QueryOracle oracle(x);
        Rng rng(0);
        CHECK_THROWS_AS(classical_test_pa(oracle, a, cfg, rng), std::invalid_argument);
    }
}

TEST_CASE("blr rounds") {
    SUBCASE("codewords always pass") {
        const BitString x = hadamard_encode(BitString::from_value(3, 6));
        Rng rng(1);
        for (int rep = 0; rep < 200; ++rep) {
            QueryOracle oracle(x);
            CHECK(blr_round(oracle, rng));
            CHECK(oracle.queries() == 3);
        }
        CHECK(blr_fail_probability(x) == 0.0);
    }
    SUBCASE("negated codeword: empirical matches the enumerated rate, n=8") {
        BitString x = hadamard_encode(BitString::from_value(3, 5));
        for (std::size_t i = 0; i < 8; ++i) x.flip(i);
        const double exact = blr_fail_probability(x);
        CHECK(exact > 0.0);

        const int rounds = 10000;
        int fails = 0;
        Rng rng(23);
        for (int r = 0; r < rounds; ++r) {
            QueryOracle oracle(x);
            if (!blr_round(oracle, rng)) ++fails;
        }
        const double sigma = std::sqrt(exact * (1.0 - exact) * rounds);
        CHECK(std::abs(fails - exact * rounds) <= 5.0 * sigma);
    }
    SUBCASE("distance one gives a positive exact failure rate, n=8") {
        BitString x = hadamard_encode(BitString::from_value(3, 2));
        x.flip(5);
        CHECK(blr_fail_probability(x) > 0.0);
    }
}

TEST_CASE("bernstein-vazirani extraction") {
    SUBCASE("codewords are decoded with certainty, n up to 32") {
        for (std::size_t m = 2; m <= 5; ++m) {
            for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << m); yv += (m == 5 ? 3 : 1)) {
                const BitString y = BitString::from_value(m, yv);
                CHECK(bv_distribution(hadamard_encode(y)).prob_of(y) >= 1.0 - 1e-9);
            }
        }
    }
    SUBCASE("all-zero string decodes to the zero codeword") {
        const BitString x(16);
        Rng rng(2);
        QueryOracle oracle(x);
        const BitString y = bv_extract(oracle, rng);
        CHECK(y.is_zero());
        CHECK(oracle.queries() == 1);
    }
    SUBCASE("one corrupted position: outcome probability (1 - 2/n)^2, n=16") {
        const BitString y = BitString::from_value(4, 11);
        BitString x = hadamard_encode(y);
        x.flip(7);
        CHECK(bv_distribution(x).prob_of(y) == doctest::Approx(49.0 / 64.0).epsilon(1e-10));
    }
}

TEST_CASE("quantum tester") {
    const std::size_t log_n = 5;   // n = 32
    const auto a = make_a(log_n, {1, 7, 19, 30});
    const TesterConfig cfg = TesterConfig::for_epsilon(0.1);

    SUBCASE("members accepted with probability one, budget exactly 3k+1") {
        for (const auto& y : a) {
            const BitString x = hadamard_encode(y);
            CHECK(quantum_reject_probability(x, a, cfg) == doctest::Approx(0.0).epsilon(1e-12));
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                Rng rng(seed);
                const TestOutcome out = quantum_test_pa(x, a, cfg, rng);
                REQUIRE(out.accepted());
                REQUIRE(out.queries() == 3 * 20 + 1);
            }
        }
    }
    SUBCASE("codeword outside A rejected with probability one") {
        const BitString x = hadamard_encode(BitString::from_value(log_n, 21));
        CHECK(quantum_reject_probability(x, a, cfg) == doctest::Approx(1.0).epsilon(1e-12));
        Rng rng(3);
        const TestOutcome out = quantum_test_pa(x, a, cfg, rng);
        CHECK_FALSE(out.accepted());
        CHECK(out.queries() == 3 * 20 + 1);   // BLR passes on a codeword
    }
    SUBCASE("far corpus: exact rejection probability at least 2/3") {
        Rng rng(31415);
        for (int i = 0; i < 25; ++i) {
            const BitString x = sample_far_from_pa(32, a, 0.1, rng);
            CHECK(quantum_reject_probability(x, a, cfg) >= 2.0 / 3.0);
        }
    }
    SUBCASE("query count independent of n") {
        std::set<std::size_t> counts;
        for (const std::size_t m : {3, 4, 5}) {
            const auto local_a = make_a(m, {1, 3});
            const BitString x = hadamard_encode(local_a[0]);
            Rng rng(9);
            counts.insert(quantum_test_pa(x, local_a, cfg, rng).queries());
        }
        CHECK(counts.size() == 1);
        CHECK(*counts.begin() == 61);
    }
    SUBCASE("rejecting runs never exceed the budget") {
        Rng rng(271);
        for (int i = 0; i < 50; ++i) {
            const BitString x = sample_far_from_pa(32, a, 0.1, rng);
            const TestOutcome out = quantum_test_pa(x, a, cfg, rng);
            CHECK(out.queries() <= 61);
        }
    }
}

TEST_CASE("generic tester") {
    const TesterConfig cfg = TesterConfig::for_epsilon(0.1);

    SUBCASE("query budget makes the union bound work for all s") {
        for (const std::size_t s : {1, 2, 16, 1000, 100000}) {
            for (const double eps : {0.05, 0.1, 0.3, 0.5}) {
                const std::size_t q = generic_query_budget(s, eps);
                CHECK(static_cast<double>(s) * std::pow(1.0 - eps, static_cast<double>(q)) <= 1.0 / 3.0);
            }
        }
        CHECK(generic_query_budget(16, 0.1) == 76);   // ceil(2 (ln 16 + 1)/0.1)
    }
    SUBCASE("members always accepted") {
        Rng setup(5);
        std::vector<BitString> members;
        for (int i = 0; i < 8; ++i) {
            BitString g(64);
            for (std::size_t j = 0; j < 64; ++j) g.set(j, setup.flip());
            members.push_back(g);
        }
        for (const auto& g : members) {
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                QueryOracle oracle(g);
                Rng rng(seed);
                const TestOutcome out = generic_test(oracle, members, cfg, rng);
                REQUIRE(out.accepted());
                REQUIRE(out.queries() == generic_query_budget(members.size(), cfg.epsilon));
            }
        }
    }
    SUBCASE("all-ones against the zero property is rejected") {
        std::vector<BitString> members{BitString(32)};
        BitString x(32);
        for (std::size_t j = 0; j < 32; ++j) x.set(j, true);
        QueryOracle oracle(x);
        Rng rng(1);
        CHECK_FALSE(generic_test(oracle, members, cfg, rng).accepted());
    }
    SUBCASE("random property, far inputs rejected at least 2/3 of the time") {
        Rng setup(6);
        std::vector<BitString> members;
        for (int i = 0; i < 16; ++i) {
            BitString g(256);
            for (std::size_t j = 0; j < 256; ++j) g.set(j, setup.flip());
            members.push_back(g);
        }
        auto distance = [&](const BitString& x) {
            long best = 256;
            for (const auto& g : members)
                best = std::min(best, static_cast<long>(BitString::hamming(x, g)));
            return best;
        };
        std::size_t rejects = 0, trials = 0;
        for (std::uint64_t t = 0; trials < 1000; ++t) {
            Rng rng = Rng::for_stream(8, t);
            BitString x(256);
            for (std::size_t j = 0; j < 256; ++j) x.set(j, rng.flip());
            if (distance(x) <= 25) continue;   // keep only (eps=0.1)-far inputs
            ++trials;
            QueryOracle oracle(x);
            if (!generic_test(oracle, members, cfg, rng).accepted()) ++rejects;
        }
        CHECK(rejects * 3 >= trials * 2);
    }
}

TEST_CASE("one-sidedness across testers, exhaustive members at n=16 and n=32") {
    for (const std::size_t m : {4, 5}) {
        Rng setup(m);
        const auto a = random_a(m, (std::size_t{1} << m) / 2, setup);
        std::vector<BitString> members;
        for (const auto& y : a) members.push_back(hadamard_encode(y));
        const TesterConfig cfg = TesterConfig::for_epsilon(0.25);

        for (const auto& y : a) {
            const BitString x = hadamard_encode(y);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                QueryOracle classical_oracle(x);
                Rng rng1(seed);
                REQUIRE(classical_test_pa(classical_oracle, a, cfg, rng1).accepted());
                Rng rng2(seed);
                REQUIRE(quantum_test_pa(x, a, cfg, rng2).accepted());
                QueryOracle generic_oracle(x);
                Rng rng3(seed);
                REQUIRE(generic_test(generic_oracle, members, cfg, rng3).accepted());
            }
        }
    }
}
