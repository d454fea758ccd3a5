#pragma once

// Energy-constrained Bures distance between quantum operations, certified by a
// saddle-point solver over (input state, environment contraction) pairs.
//
// For a common Stinespring representation V_phi, V_psi : H_A -> H_B (x) H_E the
// solver works with the biaffine objective
//
//   f(rho, U) = Tr phi(T rho) + Tr psi(T rho) - 2 Re Tr V_phi^dagger (I_B (x) U) V_psi T rho
//
// where T rho = (1 - p) rho + p sigma, rho ranges over states with
// Tr H rho <= E and U over the unit ball of B(H_E). Any U in W_psi (partial
// isometries with (I (x) U^dagger U) V_psi = V_psi) gives an upper bound
// ||V_phi - (I (x) U) V_psi||_E on the distance; any feasible rho gives a lower
// bound through the Bures distance of the extended outputs.

#include <cstdint>
#include <optional>
#include <vector>

#include "ecbures/enorm.hpp"
#include "ecbures/fidelity.hpp"
#include "ecbures/quantum.hpp"

namespace ecbures {

/// Tolerance of the W_psi membership test.
inline constexpr double kMembershipTol = 1e-7;

class KswProblem {
 public:
  /// P_psi defaults to the environment support projector of V_psi computed
  /// on the nondegenerate reference state.
  static KswProblem make(StinespringOperator v_phi, StinespringOperator v_psi, Hamiltonian h,
                         EnergyBound energy, SmoothingParams smoothing,
                         std::optional<HermitianOperator> p_psi = std::nullopt);

  const StinespringOperator& v_phi() const { return v_phi_; }
  const StinespringOperator& v_psi() const { return v_psi_; }
  const Hamiltonian& hamiltonian() const { return h_; }
  EnergyBound energy() const { return energy_; }
  const SmoothingParams& smoothing() const { return smoothing_; }
  const HermitianOperator& p_psi() const { return p_psi_; }
  /// Environment support projector of V_phi.
  const HermitianOperator& q_phi() const { return q_phi_; }
  Index d_a() const { return v_phi_.d_a(); }
  Index d_b() const { return v_phi_.d_b(); }
  Index d_e() const { return v_phi_.d_e(); }
  /// V_phi^dagger V_phi + V_psi^dagger V_psi
  const ComplexMatrix& trace_operator() const { return trace_op_; }

 private:
  KswProblem(StinespringOperator v_phi, StinespringOperator v_psi, Hamiltonian h,
             EnergyBound energy, SmoothingParams smoothing, HermitianOperator p_psi,
             HermitianOperator q_phi);

  StinespringOperator v_phi_;
  StinespringOperator v_psi_;
  Hamiltonian h_;
  EnergyBound energy_;
  SmoothingParams smoothing_;
  HermitianOperator p_psi_;
  HermitianOperator q_phi_;
  ComplexMatrix trace_op_;
};

/// One continuation stage: smoothing level and the bounds reached there.
struct StageRecord {
  double p = 0.0;
  double gap = 0.0;            // smoothed gap sqrt(max f(., U)) - sqrt(min f(rho, .))
  double smoothed_lower = 0.0;  // sqrt(min_U f(rho, U))
  double smoothed_upper = 0.0;  // sqrt(max_rho f(rho, U)) at the returned U
  double beta_n = 0.0;         // sqrt(f(rho, U)) at the certificate pair
  double enorm = 0.0;          // ||X||_E, X = V_phi - (I (x) U) V_psi
  double enorm_smoothed = 0.0;  // ||X||_E^n
  double operator_norm = 0.0;  // ||X||
  int iterations = 0;
  bool converged = false;
  bool depolarized = false;  // phi replaced by its depolarized approximation
};

struct SaddleCertificate {
  ComplexMatrix u;        // member of W_psi
  PositiveOperator rho;   // feasible input state
  double lower_bound;     // Bures distance of the extended outputs at rho
  double upper_bound;     // ||V_phi - (I (x) u) V_psi||_E
  double gap;             // upper_bound - lower_bound
  std::vector<StageRecord> p_trace;
  int iterations;
  bool converged;
};

enum class SaddleDynamics {
  /// Exact best responses on both sides with uniform running averages.
  kAveraging,
  /// Damped Newton path following for the state on min_U f(., U), smoothed on
  /// the U side and kept interior by a log barrier; both regularizations are
  /// driven to zero. U candidates are the regularized and exact responses.
  kNewton,
};

struct SaddleOptions {
  double tol = 1e-4;
  int max_iter = 500;
  SaddleDynamics dynamics = SaddleDynamics::kNewton;
};

struct WarmStart {
  std::optional<PositiveOperator> rho;
  std::optional<ComplexMatrix> u;
};

/// f(rho, U), evaluated directly from the Stinespring operators.
double objective_fn(const KswProblem& prob, const PositiveOperator& rho, const ComplexMatrix& u);

/// Exact maximization of f(., U) over the energy-constrained states.
ConstrainedOptimum rho_step(const KswProblem& prob, const ComplexMatrix& u);

/// Exact minimization of f(rho, .) over the unit ball: the adjoint polar factor
/// of K = Tr_B[V_psi T(rho) V_phi^dagger], right-multiplied by P_psi.
ComplexMatrix u_step(const KswProblem& prob, const PositiveOperator& rho);

/// min_U f(rho, U) = Tr phi(T rho) + Tr psi(T rho) - 2 ||K||_1.
double best_response_value(const KswProblem& prob, const PositiveOperator& rho);

/// Polar partial-isometry factor of U P_psi (returned unchanged when
/// U^dagger U already equals P_psi within kMembershipTol).
ComplexMatrix extract_partial_isometry(const ComplexMatrix& u, const HermitianOperator& p_psi);

/// Maps a contraction into W_psi. With enough room outside the environment
/// support of V_phi the result agrees with U on that support, so f is
/// unchanged; otherwise the polar factor is completed isometrically.
ComplexMatrix complete_to_w_psi(const KswProblem& prob, const ComplexMatrix& u);

/// Largest residual of the W_psi membership conditions.
double w_psi_residual(const KswProblem& prob, const ComplexMatrix& u);

/// ||V_phi - (I (x) U) V_psi||_E; throws InvalidInput unless U is in W_psi.
double ksw_upper_bound(const KswProblem& prob, const ComplexMatrix& u);

/// Bures distance of (phi (x) id)(omega), (psi (x) id)(omega) for a
/// purification omega of the feasible state rho.
double ecbures_lower_bound(const QuantumOperation& phi, const QuantumOperation& psi,
                           const Hamiltonian& h, EnergyBound e, const PositiveOperator& rho);

/// Multi-restart projected local ascent of the Bures distance over pure
/// energy-feasible states on H_A (x) H_R, d_R = d_A. A certified lower bound.
double direct_ecbures(const QuantumOperation& phi, const QuantumOperation& psi,
                      const Hamiltonian& h, EnergyBound e, int restarts, std::uint64_t seed = 0);

SaddleCertificate solve_saddle(const KswProblem& prob, const SaddleOptions& opts = {},
                               const WarmStart& start = {});

/// Smoothed distance: sqrt f at the converged certificate pair of prob.
double beta_n(const KswProblem& prob, const SaddleOptions& opts = {});

struct ContinuationOptions {
  std::vector<double> schedule{1e-1, 1e-2, 1e-3, 1e-4};
  Index pad = 0;
  SaddleOptions saddle{};
};

/// Runs solve_saddle along a decreasing smoothing schedule, warm-starting each
/// stage, then a final unsmoothed stage whose bounds form the certificate.
/// When phi(sigma) is rank deficient phi is replaced by its depolarized
/// approximation in the smoothed stages.
SaddleCertificate solve_with_continuation(const QuantumOperation& phi, const QuantumOperation& psi,
                                          const Hamiltonian& h, EnergyBound e,
                                          const ContinuationOptions& opts = {});

/// Certificates for increasing environment padding. Each pad is seeded with
/// the previous optimum embedded into the larger environment, so upper bounds
/// never increase along the sweep.
std::vector<SaddleCertificate> pad_sweep(const QuantumOperation& phi, const QuantumOperation& psi,
                                         const Hamiltonian& h, EnergyBound e,
                                         const std::vector<Index>& pads,
                                         const ContinuationOptions& opts = {});

/// Euclidean projection onto { rho >= 0, Tr rho = 1, Tr H rho <= E }.
PositiveOperator project_to_energy_states(const HermitianOperator& y, const Hamiltonian& h,
                                          EnergyBound e);

}  // namespace ecbures
