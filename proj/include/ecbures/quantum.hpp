#pragma once

// Quantum operations in Kraus form, Stinespring operators, complementary
// operations, smoothing maps and support subspaces.
//
// Tensor convention: H_B (x) H_E is indexed as b * d_E + e, so a Stinespring
// operator acts as V|phi> = sum_k (K_k |phi>) (x) |k>.

#include <utility>
#include <vector>

#include "ecbures/linops.hpp"

namespace ecbures {

/// Tolerance for the trace-nonincreasing and trace-preserving predicates.
inline constexpr double kOperationTol = 1e-10;

class QuantumOperation {
 public:
  /// Validates shapes (each Kraus operator d_out x d_in) and
  /// sum K^dagger K <= I within kOperationTol.
  static QuantumOperation from_kraus(Index d_in, Index d_out, std::vector<ComplexMatrix> kraus);
  static QuantumOperation identity(Index dim);
  static QuantumOperation unitary(const ComplexMatrix& u);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  Index kraus_count() const { return Index(kraus_.size()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// sum_k K_k^dagger K_k
  ComplexMatrix completeness() const;
  bool is_channel() const { return is_channel_; }

 private:
  QuantumOperation(Index d_in, Index d_out, std::vector<ComplexMatrix> kraus, bool is_channel)
      : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)), is_channel_(is_channel) {}

  Index d_in_;
  Index d_out_;
  std::vector<ComplexMatrix> kraus_;
  bool is_channel_;
};

class StinespringOperator {
 public:
  /// Validates the (d_b * d_e) x d_a shape and ||V|| <= 1 + kOperationTol.
  static StinespringOperator from(Index d_a, Index d_b, Index d_e, ComplexMatrix v);

  Index d_a() const { return d_a_; }
  Index d_b() const { return d_b_; }
  Index d_e() const { return d_e_; }
  const ComplexMatrix& matrix() const { return v_; }

 private:
  StinespringOperator(Index d_a, Index d_b, Index d_e, ComplexMatrix v)
      : d_a_(d_a), d_b_(d_b), d_e_(d_e), v_(std::move(v)) {}

  Index d_a_;
  Index d_b_;
  Index d_e_;
  ComplexMatrix v_;
};

/// Parameters of the mixing map rho -> (1 - p) rho + p sigma.
class SmoothingParams {
 public:
  /// p in [0, 1); sigma a full-rank state (p = 0 switches smoothing off).
  static SmoothingParams make(double p, PositiveOperator sigma);

  double p() const { return p_; }
  const PositiveOperator& sigma() const { return sigma_; }

 private:
  SmoothingParams(double p, PositiveOperator sigma) : p_(p), sigma_(std::move(sigma)) {}
  double p_;
  PositiveOperator sigma_;
};

/// diag(1, 1/2, ..., 1/d) normalized to unit trace: nondegenerate, with
/// distinct eigenvalues.
PositiveOperator reference_state(Index dim);

PositiveOperator apply(const QuantumOperation& op, const PositiveOperator& p);

/// (op (x) id_R)(P) for P on H_A (x) H_R.
PositiveOperator apply_extended(const QuantumOperation& op, const PositiveOperator& p, Index d_r);

StinespringOperator stinespring_from_kraus(const QuantumOperation& op);
/// As above with the environment zero-padded to d_e >= kraus_count.
StinespringOperator stinespring_from_kraus(const QuantumOperation& op, Index d_e);

/// K_k = (I_B (x) <k|) V for the computational environment basis.
QuantumOperation kraus_from_stinespring(const StinespringOperator& v);

/// Tr_E V rho V^dagger
PositiveOperator apply(const StinespringOperator& v, const PositiveOperator& rho);

/// Both operators on a shared environment of dimension max(r_phi, r_psi) + pad;
/// each Kraus family fills the first coordinates, the rest is zero.
std::pair<StinespringOperator, StinespringOperator> common_stinespring(const QuantumOperation& phi,
                                                                       const QuantumOperation& psi,
                                                                       Index pad);

/// The operation A -> E obtained by tracing out B instead of E.
QuantumOperation complementary(const StinespringOperator& v);

PositiveOperator smooth_state(const PositiveOperator& rho, const SmoothingParams& sp);

/// Kraus family of rho -> (1 - p) phi(rho) + p Tr(rho) sigma, with sigma on the
/// output space.
QuantumOperation depolarize_operation(const QuantumOperation& phi, const SmoothingParams& sp);

/// Projector onto supp phi(sigma) for a nondegenerate state sigma; this is the
/// smallest subspace containing the supports of all outputs of phi.
HermitianOperator operation_support_subspace(const QuantumOperation& phi,
                                             const PositiveOperator& sigma,
                                             double rank_tol = kDefaultRankTol);

/// Projector onto the smallest environment subspace holding every output of
/// the complementary operation.
HermitianOperator environment_support_projector(const StinespringOperator& v_psi,
                                                const PositiveOperator& sigma,
                                                double rank_tol = kDefaultRankTol);

struct Purification {
  ComplexVector vector;  // on H_A (x) H_R, index a * d_r + i
  Index d_r;
};

/// omega = sum_i sqrt(lambda_i) |e_i> (x) |i> over the support of rho.
Purification purify(const PositiveOperator& rho, double rank_tol = kDefaultRankTol);

}  // namespace ecbures
