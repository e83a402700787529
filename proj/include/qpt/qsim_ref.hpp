#ifndef QPT_QSIM_REF_HPP
#define QPT_QSIM_REF_HPP

#include "qpt/qsim.hpp"

namespace qpt::qsim_ref {

// Serial reference implementations of every gate, written as plain
// basis-state maps over a fresh output vector.  Kept for cross-checking the
// parallel kernels in tests and for the kernel benchmark.

void hadamard_x(QuantumState& state);
void not_y(QuantumState& state);
void hadamard_y(QuantumState& state);
void oracle_xor(QuantumState& state, const BooleanFunction& f);
void cnot_x_to_z(QuantumState& state, int x_qubit, int z_qubit);
void xor_x_conditional(QuantumState& state, const BitString& z_vec, int z_qubit);
void hadamard_z(QuantumState& state, int z_qubit);

} // namespace qpt::qsim_ref

#endif
