#include "ecbures/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ecbures {

double fidelity(const PositiveOperator& rho, const PositiveOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw InvalidInput("fidelity: operators have different dimensions");
  ComplexMatrix root = psd_sqrt(sigma).matrix();
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(root * rho.matrix() * root));
  // Eigenvalues at rounding level are zeros of a rank-deficient product;
  // keeping them would add O(sqrt(eps)) to the root sum.
  const double floor = 16.0 * double(rho.dim()) * std::numeric_limits<double>::epsilon() *
                       std::max(ed.eigenvalues(0), 0.0);
  double s = 0.0;
  for (Index i = 0; i < ed.eigenvalues.size(); ++i) {
    if (ed.eigenvalues(i) > floor) s += std::sqrt(ed.eigenvalues(i));
  }
  return s * s;
}

double bures_distance(const PositiveOperator& rho, const PositiveOperator& sigma) {
  double radicand = rho.trace() + sigma.trace() - 2.0 * std::sqrt(fidelity(rho, sigma));
  if (radicand < -1e-9) {
    throw NumericalFailure("bures_distance: negative radicand " + std::to_string(radicand));
  }
  return std::sqrt(std::max(radicand, 0.0));
}

AlignmentResult align_purifications(const ComplexVector& phi, const ComplexVector& psi, Index d_a,
                                    Index d_b) {
  if (phi.size() != d_a * d_b || psi.size() != d_a * d_b) {
    throw InvalidInput("align_purifications: vectors do not live on H_A (x) H_B");
  }
  // K = Tr_A |phi><psi|, so <psi| I (x) U |phi> = Tr(U K).
  ComplexMatrix k = partial_trace(ComplexMatrix(phi * psi.adjoint()), d_a, d_b, Factor::kFirst);
  PolarDecomposition pd = polar(k);
  AlignmentResult out;
  out.u0 = pd.isometry.adjoint();
  // Tr(W^dagger W P) = Tr P, real by construction; the imaginary part is noise.
  out.overlap = Complex((out.u0 * k).trace().real(), 0.0);
  out.fidelity_value = std::norm(out.overlap);

  ComplexMatrix lift = kron(ComplexMatrix::Identity(d_a, d_a), out.u0.adjoint() * out.u0);
  double residual = (lift * phi - phi).norm();
  out.satisfies_u_cond = residual <= 1e-8 * std::max(1.0, phi.norm());
  return out;
}

double operation_fidelity_lower_witness(const QuantumOperation& phi, const QuantumOperation& psi,
                                        const PositiveOperator& omega, Index d_r) {
  if (phi.d_in() != psi.d_in() || phi.d_out() != psi.d_out()) {
    throw InvalidInput("operation_fidelity_lower_witness: operations act between different spaces");
  }
  return fidelity(apply_extended(phi, omega, d_r), apply_extended(psi, omega, d_r));
}

}  // namespace ecbures
