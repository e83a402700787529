#ifndef QPT_LEMMA_CHECKS_HPP
#define QPT_LEMMA_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qpt/f2core.hpp"
#include "qpt/rng.hpp"
#include "qpt/simon_tester.hpp"

namespace qpt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Uniformly random basis in reduced form; dim < 0 draws the dimension
/// uniformly from {0..n}.
Basis random_reduced_basis(std::size_t n, Rng& rng, int dim = -1);

/// Every subspace of {0,1}^n via its canonical reduced basis.
std::vector<Basis> enumerate_all_bases(std::size_t n);

/// Hamming distance from f to the coset-wise majority-vote repair (the
/// nearest function constant on every cell of the basis partition).
long majority_repair_distance(const BooleanFunction& f, const Basis& basis);

/// Exact integer form of the X=0 mass: 2^k * sum |D_{b,c}|^2 == N^2 iff 1.
bool p0_is_one_exact(const BooleanFunction& f, const Basis& basis);

// Individual construction-level checks.  Tolerances are fixed inside.
CheckResult check_hadamard_code_facts();
CheckResult check_bv_exactness();
CheckResult check_state_equivalence(std::uint64_t seed);
CheckResult check_measured_z_invariants(std::uint64_t seed);
CheckResult check_zero_state_iff_n3();
CheckResult check_zero_state_approx_n3();
CheckResult check_member_iff_n3();
CheckResult check_measure_zero_arithmetic();
CheckResult check_dwise_shipped();

std::vector<CheckResult> run_lemma_checks(std::uint64_t seed);

} // namespace qpt

#endif
