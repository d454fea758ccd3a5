#pragma once

// The energy-constrained operator norm ||X||_E = sup { ||X phi|| : ||phi|| = 1,
// <phi|H|phi> <= E } and the spectral optimizer behind it.

#include <optional>

#include "ecbures/linops.hpp"
#include "ecbures/quantum.hpp"

namespace ecbures {

/// Energy-constraint slack on Tr H rho <= E.
inline constexpr double kEnergyTol = 1e-9;

class Hamiltonian {
 public:
  /// Sorts the spectrum ascending (carrying the basis along) and validates
  /// nonnegativity and orthonormality of the basis.
  static Hamiltonian from_spectrum(const RealVector& eigenvalues, const ComplexMatrix& basis);
  /// Spectrum in the computational basis.
  static Hamiltonian diagonal(const RealVector& eigenvalues);

  Index dim() const { return eigenvalues_.size(); }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& basis() const { return basis_; }
  bool has_computational_basis() const { return computational_; }
  double ground_energy() const { return eigenvalues_(0); }
  double top_energy() const { return eigenvalues_(dim() - 1); }
  const ComplexMatrix& matrix() const { return matrix_; }
  ComplexVector ground_state() const { return basis_.col(0); }

 private:
  Hamiltonian(RealVector eigenvalues, ComplexMatrix basis, bool computational);
  RealVector eigenvalues_;
  ComplexMatrix basis_;
  ComplexMatrix matrix_;
  bool computational_;
};

struct EnergyBound {
  double value;
};

/// Throws InvalidInput unless E > E_0.
void require_energy_above_ground(const Hamiltonian& h, EnergyBound e);

struct ConstrainedOptimum {
  double value;         // dual objective at lambda_star: a certified upper bound
  double primal_value;  // Tr M rho_star: attained by a feasible state
  double lambda_star;
  PositiveOperator rho_star;
  bool active;
  std::optional<ComplexVector> pure_witness;
};

/// max { Tr M rho : rho >= 0, Tr rho = 1, Tr H rho <= E } through the dual
/// lambda -> lambda E + lambda_max(M - lambda H), minimized by bisection on its
/// subgradient over [0, (lambda_max(M) - lambda_min(M)) / (E - E_0) + 1]. The
/// primal optimizer is a mixture of two eigenvectors of M - lambda* H that
/// meets the energy constraint with equality when it is active.
ConstrainedOptimum max_linear_over_energy_ball(const HermitianOperator& m, const Hamiltonian& h,
                                               EnergyBound e);

double enorm(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e);

/// [||X||_E^p]^2 = (1 - p) ||X||_E^2 + p Tr X sigma X^dagger.
double enorm_smoothed(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e,
                      const SmoothingParams& sp);

/// A unit vector phi with <phi|H|phi> <= E + kEnergyTol and
/// <phi|M|phi> >= opt.value - 1e-7. Throws NumericalFailure if no such vector
/// is found (the mixed rho_star remains a valid witness).
ComplexVector pure_witness_refine(const ConstrainedOptimum& opt, const HermitianOperator& m,
                                  const Hamiltonian& h, EnergyBound e);

}  // namespace ecbures
