#ifndef QPT_QSIM_HPP
#define QPT_QSIM_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpt/bitstring.hpp"
#include "qpt/f2core.hpp"
#include "qpt/rng.hpp"

namespace qpt {

/// Marginal probability of each X-register outcome, indexed by the outcome's
/// integer value (coordinate j of the outcome = bit j of the index).
struct OutcomeDistribution {
    int n = 0;
    std::vector<double> p;

    double prob_of(const BitString& x) const { return p[x.value()]; }
    double total() const;
};

/**
 * Dense state vector over the workspace X (n qubits) ⊗ Y (1 qubit) ⊗ Z
 * (k qubits).  Qubit 0 is the most significant bit of the basis label; X
 * occupies qubits 0..n-1, Y qubit n, Z qubits n+1..n+k.  X-register qubit j
 * carries coordinate j of the vector held in X.
 *
 * Gate application is elementwise over amplitude pairs and goes parallel
 * (OpenMP) above a size cutover; results are identical to the serial
 * reference in qsim_ref.hpp for every size.  A state must be confined to
 * one thread at a time; distinct states are independent.
 */
class QuantumState {
public:
    QuantumState(int n, int k);   // |0^n>|0>|0^k>

    int x_bits() const { return n_; }
    int z_bits() const { return k_; }
    std::size_t dimension() const { return amp_.size(); }

    std::complex<double> amplitude(std::size_t index) const { return amp_[index]; }
    std::vector<std::complex<double>>& amplitudes() { return amp_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

    /// H on every X qubit (the 2^n-dimensional Hadamard transform on X).
    void hadamard_x();
    /// NOT on Y; with hadamard_y this prepares (|0> - |1>)/sqrt(2) for
    /// phase kickback.
    void not_y();
    void hadamard_y();
    /// |x, y, z> -> |x, y XOR f(x), z>.
    void oracle_xor(const BooleanFunction& f);
    /// Controlled NOT, control X_{x_qubit}, target Z_{z_qubit}.
    void cnot_x_to_z(int x_qubit, int z_qubit);
    /// |x> -> |x XOR z_vec> on X, on branches where Z_{z_qubit} = 1.
    void xor_x_conditional(const BitString& z_vec, int z_qubit);
    void hadamard_z(int z_qubit);

    double norm() const;
    /// Probability of X-outcome 0^n (squared norm under the projection
    /// that keeps only X = 0 branches).
    double p0_norm_sq() const;
    OutcomeDistribution x_distribution() const;

    /// Draws an X outcome without collapsing the state.
    BitString sample_x(Rng& rng) const;
    /// Measures X: samples an outcome, collapses and renormalizes.
    BitString measure_x(Rng& rng);

    /// Text lines "index(bits) re im" for amplitudes with magnitude above
    /// the floor; bits are the basis label, qubit 0 first.
    std::string dump(double magnitude_floor = 1e-12) const;

private:
    std::size_t y_mask() const { return std::size_t{1} << k_; }
    int qubit_bitpos(int qubit) const { return n_ + k_ - qubit; }   // total qubits n+1+k

    int n_;
    int k_;
    std::vector<std::complex<double>> amp_;
};

} // namespace qpt

#endif
