#pragma once

#include "ecbures/linops.hpp"
#include "ecbures/quantum.hpp"

namespace ecbures {

/// F(rho, sigma) = [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2 for positive
/// (possibly subnormalized) operators.
double fidelity(const PositiveOperator& rho, const PositiveOperator& sigma);

/// sqrt(Tr rho + Tr sigma - 2 sqrt(F)). Throws NumericalFailure if the radicand
/// falls below -1e-9; smaller negative values are clipped to zero.
double bures_distance(const PositiveOperator& rho, const PositiveOperator& sigma);

struct AlignmentResult {
  ComplexMatrix u0;      // contraction on H_B maximizing |<psi| I (x) U |phi>|
  Complex overlap;       // <psi| I (x) u0 |phi>, real and nonnegative
  double fidelity_value;  // |overlap|^2
  bool satisfies_u_cond;  // (I (x) u0^dagger u0)|phi> == |phi> within 1e-8
};

/// Optimal alignment of two vectors on H_A (x) H_B by a contraction acting on
/// H_B. u0 is the adjoint of the partial-isometry polar factor of
/// Tr_A |phi><psi|, so the overlap equals that operator's trace norm.
AlignmentResult align_purifications(const ComplexVector& phi, const ComplexVector& psi, Index d_a,
                                    Index d_b);

/// F((phi (x) id_R)(omega), (psi (x) id_R)(omega)); any such value bounds the
/// operational fidelity from above.
double operation_fidelity_lower_witness(const QuantumOperation& phi, const QuantumOperation& psi,
                                        const PositiveOperator& omega, Index d_r);

}  // namespace ecbures
