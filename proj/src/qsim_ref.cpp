#include "qpt/qsim_ref.hpp"

#include <cmath>

namespace qpt::qsim_ref {

namespace {

// Index bit position of qubit q in a state with Q = n+1+k qubits.
int bitpos(const QuantumState& s, int qubit) { return s.x_bits() + s.z_bits() - qubit; }

void h_on_bit(QuantumState& state, int bp) {
    auto& amp = state.amplitudes();
    const std::size_t mask = std::size_t{1} << bp;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> out(amp.size());
    for (std::size_t i = 0; i < amp.size(); ++i) {
        const std::size_t partner = i ^ mask;
        if (i & mask)
            out[i] = (amp[partner] - amp[i]) * inv_sqrt2;
        else
            out[i] = (amp[i] + amp[partner]) * inv_sqrt2;
    }
    amp = std::move(out);
}

// Applies the basis-state permutation i -> target(i).
template <typename Map>
void permute(QuantumState& state, Map&& target) {
    auto& amp = state.amplitudes();
    std::vector<std::complex<double>> out(amp.size());
    for (std::size_t i = 0; i < amp.size(); ++i) out[target(i)] = amp[i];
    amp = std::move(out);
}

std::size_t x_position(const QuantumState& s, std::size_t index) {
    // Integer value of the vector held in X: coordinate j sits at qubit j.
    std::size_t pos = 0;
    for (int j = 0; j < s.x_bits(); ++j)
        if ((index >> bitpos(s, j)) & 1) pos |= std::size_t{1} << j;
    return pos;
}

} // namespace

void hadamard_x(QuantumState& state) {
    for (int q = 0; q < state.x_bits(); ++q) h_on_bit(state, bitpos(state, q));
}

void not_y(QuantumState& state) {
    const std::size_t ym = std::size_t{1} << state.z_bits();
    permute(state, [ym](std::size_t i) { return i ^ ym; });
}

void hadamard_y(QuantumState& state) { h_on_bit(state, state.z_bits()); }

void oracle_xor(QuantumState& state, const BooleanFunction& f) {
    const std::size_t ym = std::size_t{1} << state.z_bits();
    permute(state, [&](std::size_t i) {
        return f.at(x_position(state, i)) ? (i ^ ym) : i;
    });
}

void cnot_x_to_z(QuantumState& state, int x_qubit, int z_qubit) {
    const std::size_t xm = std::size_t{1} << bitpos(state, x_qubit);
    const std::size_t zm = std::size_t{1} << (state.z_bits() - 1 - z_qubit);
    permute(state, [xm, zm](std::size_t i) { return (i & xm) ? (i ^ zm) : i; });
}

void xor_x_conditional(QuantumState& state, const BitString& z_vec, int z_qubit) {
    std::size_t xor_mask = 0;
    for (int j = 0; j < state.x_bits(); ++j)
        if (z_vec.get(static_cast<std::size_t>(j))) xor_mask |= std::size_t{1} << bitpos(state, j);
    const std::size_t zm = std::size_t{1} << (state.z_bits() - 1 - z_qubit);
    permute(state, [xor_mask, zm](std::size_t i) { return (i & zm) ? (i ^ xor_mask) : i; });
}

void hadamard_z(QuantumState& state, int z_qubit) {
    h_on_bit(state, state.z_bits() - 1 - z_qubit);
}

} // namespace qpt::qsim_ref
