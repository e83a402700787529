#include "qpt/qsim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qpt {

namespace {

constexpr std::size_t kParallelCutover = std::size_t{1} << 16;

std::size_t bit_reverse(std::size_t v, int bits) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

// In-place H on the index bit at position `bitpos`.
void apply_h(std::vector<std::complex<double>>& amp, int bitpos) {
    const std::size_t mask = std::size_t{1} << bitpos;
    const std::size_t lo = mask - 1;
    const std::size_t half = amp.size() / 2;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
#pragma omp parallel for schedule(static) if (amp.size() >= kParallelCutover)
    for (long long i = 0; i < static_cast<long long>(half); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        const std::size_t i0 = ((u & ~lo) << 1) | (u & lo);
        const std::size_t i1 = i0 | mask;
        const std::complex<double> a0 = amp[i0];
        const std::complex<double> a1 = amp[i1];
        amp[i0] = (a0 + a1) * inv_sqrt2;
        amp[i1] = (a0 - a1) * inv_sqrt2;
    }
}

} // namespace

double OutcomeDistribution::total() const {
    double t = 0.0;
    for (double v : p) t += v;
    return t;
}

QuantumState::QuantumState(int n, int k) : n_(n), k_(k) {
    if (n < 1 || k < 0) throw std::invalid_argument("QuantumState: need n >= 1, k >= 0");
    if (n + 1 + k > 26) throw std::invalid_argument("QuantumState: workspace too large");
    amp_.assign(std::size_t{1} << (n + 1 + k), {0.0, 0.0});
    amp_[0] = {1.0, 0.0};
}

void QuantumState::hadamard_x() {
    for (int q = 0; q < n_; ++q) apply_h(amp_, qubit_bitpos(q));
}

void QuantumState::not_y() {
    const std::size_t ym = y_mask();
#pragma omp parallel for schedule(static) if (amp_.size() >= kParallelCutover)
    for (long long i = 0; i < static_cast<long long>(amp_.size()); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (!(u & ym)) std::swap(amp_[u], amp_[u | ym]);
    }
}

void QuantumState::hadamard_y() { apply_h(amp_, k_); }

void QuantumState::oracle_xor(const BooleanFunction& f) {
    if (f.domain_bits() != n_) throw std::invalid_argument("oracle_xor: domain size mismatch");
    const std::size_t N = f.size();
    const std::size_t ym = y_mask();
    const std::size_t block = std::size_t{1} << k_;
#pragma omp parallel for schedule(static) if (amp_.size() >= kParallelCutover)
    for (long long p = 0; p < static_cast<long long>(N); ++p) {
        if (!f.at(static_cast<std::size_t>(p))) continue;
        const std::size_t base = bit_reverse(static_cast<std::size_t>(p), n_) << (k_ + 1);
        for (std::size_t t = 0; t < block; ++t)
            std::swap(amp_[base | t], amp_[base | ym | t]);
    }
}

void QuantumState::cnot_x_to_z(int x_qubit, int z_qubit) {
    if (x_qubit < 0 || x_qubit >= n_) throw std::invalid_argument("cnot_x_to_z: X index out of range");
    if (z_qubit < 0 || z_qubit >= k_) throw std::invalid_argument("cnot_x_to_z: Z index out of range");
    const std::size_t xm = std::size_t{1} << qubit_bitpos(x_qubit);
    const std::size_t zm = std::size_t{1} << (k_ - 1 - z_qubit);
#pragma omp parallel for schedule(static) if (amp_.size() >= kParallelCutover)
    for (long long i = 0; i < static_cast<long long>(amp_.size()); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if ((u & xm) && !(u & zm)) std::swap(amp_[u], amp_[u | zm]);
    }
}

void QuantumState::xor_x_conditional(const BitString& z_vec, int z_qubit) {
    if (static_cast<int>(z_vec.size()) != n_)
        throw std::invalid_argument("xor_x_conditional: vector length mismatch");
    if (z_qubit < 0 || z_qubit >= k_) throw std::invalid_argument("xor_x_conditional: Z index out of range");
    std::size_t xor_mask = 0;
    for (int j = 0; j < n_; ++j)
        if (z_vec.get(static_cast<std::size_t>(j))) xor_mask |= std::size_t{1} << qubit_bitpos(j);
    if (xor_mask == 0) return;
    const std::size_t zm = std::size_t{1} << (k_ - 1 - z_qubit);
#pragma omp parallel for schedule(static) if (amp_.size() >= kParallelCutover)
    for (long long i = 0; i < static_cast<long long>(amp_.size()); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if ((u & zm) && (u ^ xor_mask) > u) std::swap(amp_[u], amp_[u ^ xor_mask]);
    }
}

void QuantumState::hadamard_z(int z_qubit) {
    if (z_qubit < 0 || z_qubit >= k_) throw std::invalid_argument("hadamard_z: Z index out of range");
    apply_h(amp_, k_ - 1 - z_qubit);
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

double QuantumState::p0_norm_sq() const {
    const std::size_t block = std::size_t{1} << (k_ + 1);
    double s = 0.0;
    for (std::size_t i = 0; i < block; ++i) s += std::norm(amp_[i]);
    return s;
}

OutcomeDistribution QuantumState::x_distribution() const {
    OutcomeDistribution dist;
    dist.n = n_;
    dist.p.assign(std::size_t{1} << n_, 0.0);
    const std::size_t block = std::size_t{1} << (k_ + 1);
    for (std::size_t xl = 0; xl < dist.p.size(); ++xl) {
        double s = 0.0;
        const std::size_t base = xl << (k_ + 1);
        for (std::size_t t = 0; t < block; ++t) s += std::norm(amp_[base | t]);
        dist.p[bit_reverse(xl, n_)] = s;
    }
    return dist;
}

BitString QuantumState::sample_x(Rng& rng) const {
    const std::size_t blocks = std::size_t{1} << n_;
    const std::size_t block = std::size_t{1} << (k_ + 1);
    const double u = rng.unit();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t xl = 0; xl < blocks; ++xl) {
        double s = 0.0;
        const std::size_t base = xl << (k_ + 1);
        for (std::size_t t = 0; t < block; ++t) s += std::norm(amp_[base | t]);
        if (s > 0.0) last_positive = xl;
        cumulative += s;
        if (u < cumulative) return BitString::from_value(static_cast<std::size_t>(n_), bit_reverse(xl, n_));
    }
    return BitString::from_value(static_cast<std::size_t>(n_), bit_reverse(last_positive, n_));
}

BitString QuantumState::measure_x(Rng& rng) {
    const BitString outcome = sample_x(rng);
    const std::size_t xl = bit_reverse(outcome.value(), n_);
    const std::size_t block = std::size_t{1} << (k_ + 1);
    const std::size_t base = xl << (k_ + 1);
    double s = 0.0;
    for (std::size_t t = 0; t < block; ++t) s += std::norm(amp_[base | t]);
    const double scale = 1.0 / std::sqrt(s);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i >> (k_ + 1)) == xl)
            amp_[i] *= scale;
        else
            amp_[i] = {0.0, 0.0};
    }
    return outcome;
}

std::string QuantumState::dump(double magnitude_floor) const {
    const int qubits = n_ + 1 + k_;
    std::string out;
    char buf[128];
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (std::abs(amp_[i]) <= magnitude_floor) continue;
        std::string bits(static_cast<std::size_t>(qubits), '0');
        for (int q = 0; q < qubits; ++q)
            if ((i >> (qubits - 1 - q)) & 1) bits[static_cast<std::size_t>(q)] = '1';
        std::snprintf(buf, sizeof(buf), "%zu(%s) %.12g %.12g\n", i, bits.c_str(), amp_[i].real(), amp_[i].imag());
        out += buf;
    }
    return out;
}

} // namespace qpt
