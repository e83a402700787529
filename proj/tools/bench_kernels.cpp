// Kernel benchmark: OpenMP-parallel hot loops against their serial
// reference implementations, with a max-deviation column as a sanity check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qpt/f2core.hpp"
#include "qpt/qsim.hpp"
#include "qpt/qsim_ref.hpp"
#include "qpt/rng.hpp"
#include "qpt/simon_tester.hpp"

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, double max_dev) {
    std::printf("%-34s %10.2f %10.2f %8.2fx %12.3g\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_dev);
}

double max_amp_deviation(const qpt::QuantumState& a, const qpt::QuantumState& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i)
        dev = std::max(dev, std::abs(a.amplitude(i) - b.amplitude(i)));
    return dev;
}

void bench_hadamard_transform(int n_qubits, int repeats) {
    qpt::QuantumState parallel_state(n_qubits, 0);
    qpt::QuantumState serial_state(n_qubits, 0);

    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) qpt::qsim_ref::hadamard_x(serial_state);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) parallel_state.hadamard_x();
    const double parallel_ms = ms_since(t0);

    report("hadamard transform, " + std::to_string(n_qubits) + " qubits x" + std::to_string(repeats),
           serial_ms, parallel_ms, max_amp_deviation(serial_state, parallel_state));
}

void bench_oracle(int n_qubits, int repeats) {
    qpt::Rng rng(7);
    const qpt::BooleanFunction f = qpt::BooleanFunction::random(n_qubits, rng);
    qpt::QuantumState parallel_state(n_qubits, 0);
    qpt::QuantumState serial_state(n_qubits, 0);
    parallel_state.hadamard_x();
    serial_state.hadamard_x();

    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) qpt::qsim_ref::oracle_xor(serial_state, f);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) parallel_state.oracle_xor(f);
    const double parallel_ms = ms_since(t0);

    report("xor oracle, " + std::to_string(n_qubits) + " qubits x" + std::to_string(repeats), serial_ms,
           parallel_ms, max_amp_deviation(serial_state, parallel_state));
}

void bench_distance_to_pa(std::size_t code_bits, std::size_t a_size, int repeats) {
    qpt::Rng rng(11);
    const std::size_t n = std::size_t{1} << code_bits;
    std::vector<qpt::BitString> a;
    for (std::size_t i = 0; i < a_size; ++i)
        a.push_back(qpt::BitString::from_value(code_bits, rng.below(n)));
    qpt::BitString x(n);
    for (std::size_t j = 0; j < n; ++j) x.set(j, rng.flip());

    long serial_result = 0, parallel_result = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) serial_result = qpt::distance_to_pa_serial(x, a);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) parallel_result = qpt::distance_to_pa(x, a);
    const double parallel_ms = ms_since(t0);

    report("codeword distance, n=2^" + std::to_string(code_bits) + ", |A|=" + std::to_string(a_size),
           serial_ms, parallel_ms, std::abs(static_cast<double>(serial_result - parallel_result)));
}

void bench_distance_to_l(int domain_bits, int repeats) {
    qpt::Rng rng(13);
    const qpt::BooleanFunction f = qpt::BooleanFunction::random(domain_bits, rng);

    long serial_result = 0, parallel_result = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) serial_result = qpt::distance_to_l_serial(f);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) parallel_result = qpt::distance_to_l(f);
    const double parallel_ms = ms_since(t0);

    report("shift-invariance distance, n=" + std::to_string(domain_bits), serial_ms, parallel_ms,
           std::abs(static_cast<double>(serial_result - parallel_result)));
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("Built without OpenMP; the parallel column runs serially\n\n");
#endif
    std::printf("%-34s %10s %10s %9s %12s\n", "kernel", "serial ms", "parallel", "speedup", "max dev");

    bench_hadamard_transform(20, 4);
    bench_hadamard_transform(22, 2);
    bench_oracle(20, 8);
    bench_oracle(22, 4);
    bench_distance_to_pa(18, 512, 4);
    bench_distance_to_pa(20, 256, 2);
    bench_distance_to_l(13, 3);
    bench_distance_to_l(14, 1);
    return 0;
}
