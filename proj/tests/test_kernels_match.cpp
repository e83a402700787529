// Parallel production kernels against the serial reference implementations.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "qpt/f2core.hpp"
#include "qpt/qsim.hpp"
#include "qpt/qsim_ref.hpp"
#include "qpt/rng.hpp"
#include "qpt/simon_tester.hpp"

using namespace qpt;

namespace {

QuantumState random_state(int n, int k, Rng& rng) {
    QuantumState st(n, k);
    auto& amp = st.amplitudes();
    double norm_sq = 0.0;
    for (auto& a : amp) {
        a = {rng.unit() - 0.5, rng.unit() - 0.5};
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amp) a *= scale;
    return st;
}

double max_deviation(const QuantumState& a, const QuantumState& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        dev = std::max(dev, std::abs(a.amplitude(i) - b.amplitude(i)));
    return dev;
}

} // namespace

TEST_CASE("gate kernels match the serial reference") {
    Rng rng(2024);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const int k = static_cast<int>(rng.below(4));
        QuantumState parallel_state = random_state(n, k, rng);
        QuantumState serial_state = parallel_state;

        for (int g = 0; g < 6; ++g) {
            switch (rng.below(7)) {
                case 0:
                    parallel_state.hadamard_x();
                    qsim_ref::hadamard_x(serial_state);
                    break;
                case 1:
                    parallel_state.not_y();
                    qsim_ref::not_y(serial_state);
                    break;
                case 2:
                    parallel_state.hadamard_y();
                    qsim_ref::hadamard_y(serial_state);
                    break;
                case 3: {
                    BooleanFunction f = BooleanFunction::zero(n);
                    for (std::size_t p = 0; p < f.size(); ++p) f.set(p, rng.flip());
                    parallel_state.oracle_xor(f);
                    qsim_ref::oracle_xor(serial_state, f);
                    break;
                }
                case 4:
                    if (k > 0) {
                        const int xq = static_cast<int>(rng.below(n));
                        const int zq = static_cast<int>(rng.below(k));
                        parallel_state.cnot_x_to_z(xq, zq);
                        qsim_ref::cnot_x_to_z(serial_state, xq, zq);
                    }
                    break;
                case 5:
                    if (k > 0) {
                        BitString v(static_cast<std::size_t>(n));
                        for (std::size_t j = 0; j < v.size(); ++j) v.set(j, rng.flip());
                        const int zq = static_cast<int>(rng.below(k));
                        parallel_state.xor_x_conditional(v, zq);
                        qsim_ref::xor_x_conditional(serial_state, v, zq);
                    }
                    break;
                default:
                    if (k > 0) {
                        const int zq = static_cast<int>(rng.below(k));
                        parallel_state.hadamard_z(zq);
                        qsim_ref::hadamard_z(serial_state, zq);
                    }
                    break;
            }
            REQUIRE(max_deviation(parallel_state, serial_state) == 0.0);
        }
    }
}

TEST_CASE("gate kernels match above the parallel cutover") {
    // 17 qubits exceeds the size threshold, so the OpenMP path is active.
    Rng rng(7);
    QuantumState parallel_state = random_state(16, 0, rng);
    QuantumState serial_state = parallel_state;

    parallel_state.hadamard_x();
    qsim_ref::hadamard_x(serial_state);
    CHECK(max_deviation(parallel_state, serial_state) == 0.0);

    BooleanFunction f = BooleanFunction::zero(16);
    for (std::size_t p = 0; p < f.size(); ++p) f.set(p, rng.flip());
    parallel_state.oracle_xor(f);
    qsim_ref::oracle_xor(serial_state, f);
    CHECK(max_deviation(parallel_state, serial_state) == 0.0);
}

TEST_CASE("packed pair counting matches the per-point reference") {
    Rng rng(11);
    for (const int n : {1, 2, 3, 5, 6, 7, 9}) {
        for (int rep = 0; rep < 20; ++rep) {
            const BooleanFunction f = BooleanFunction::random(n, rng);
            const std::uint64_t sv = rng.below(std::uint64_t{1} << n);
            const BitString s = BitString::from_value(static_cast<std::size_t>(n), sv);
            CHECK(n_s(f, s) == n_s_serial(f, s));
        }
    }
}

TEST_CASE("distance kernels match their serial references") {
    Rng rng(13);
    SUBCASE("shift-invariance distance") {
        for (const int n : {2, 3, 4, 7, 8}) {
            for (int rep = 0; rep < 10; ++rep) {
                const BooleanFunction f = BooleanFunction::random(n, rng);
                CHECK(distance_to_l(f) == distance_to_l_serial(f));
            }
        }
    }
    SUBCASE("shift-invariance distance above the parallel cutover") {
        const BooleanFunction f = BooleanFunction::random(12, rng);
        CHECK(distance_to_l(f) == distance_to_l_serial(f));
    }
    SUBCASE("codeword distance") {
        for (const std::size_t m : {3, 5, 7}) {
            std::vector<BitString> a;
            const std::size_t count = 1 + rng.below(std::size_t{1} << std::min<std::size_t>(m, 4));
            for (std::size_t i = 0; i < count; ++i)
                a.push_back(BitString::from_value(m, rng.below(std::uint64_t{1} << m)));
            for (int rep = 0; rep < 10; ++rep) {
                BitString x(std::size_t{1} << m);
                for (std::size_t j = 0; j < x.size(); ++j) x.set(j, rng.flip());
                CHECK(distance_to_pa(x, a) == distance_to_pa_serial(x, a));
            }
        }
    }
    SUBCASE("codeword distance above the parallel cutover") {
        const std::size_t m = 12;
        std::vector<BitString> a;
        for (int i = 0; i < 128; ++i)
            a.push_back(BitString::from_value(m, rng.below(std::uint64_t{1} << m)));
        BitString x(std::size_t{1} << m);
        for (std::size_t j = 0; j < x.size(); ++j) x.set(j, rng.flip());
        CHECK(distance_to_pa(x, a) == distance_to_pa_serial(x, a));
    }
}
