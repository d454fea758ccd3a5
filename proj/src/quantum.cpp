#include "ecbures/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ecbures {

namespace {

void require_full_rank_state(const PositiveOperator& sigma, double rank_tol, const char* who) {
  if (std::abs(sigma.trace() - 1.0) > 1e-10) {
    throw InvalidInput(std::string(who) + ": reference state must have unit trace");
  }
  if (rank(sigma, rank_tol) != sigma.dim()) {
    throw InvalidInput(std::string(who) + ": reference state is degenerate (rank deficient)");
  }
}

}  // namespace

QuantumOperation QuantumOperation::from_kraus(Index d_in, Index d_out,
                                              std::vector<ComplexMatrix> kraus) {
  if (d_in < 1 || d_out < 1) throw InvalidInput("QuantumOperation: dimensions must be positive");
  if (kraus.empty()) throw InvalidInput("QuantumOperation: empty Kraus family");
  ComplexMatrix sum = ComplexMatrix::Zero(d_in, d_in);
  for (const auto& k : kraus) {
    require_finite(k, "QuantumOperation");
    if (k.rows() != d_out || k.cols() != d_in) {
      throw InvalidInput("QuantumOperation: Kraus operator is " + std::to_string(k.rows()) + "x" +
                         std::to_string(k.cols()) + ", expected " + std::to_string(d_out) + "x" +
                         std::to_string(d_in));
    }
    sum += k.adjoint() * k;
  }
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(sum));
  if (ed.eigenvalues(0) > 1.0 + kOperationTol) {
    throw InvalidInput("QuantumOperation: Kraus family is trace-increasing");
  }
  bool channel = max_abs(sum - ComplexMatrix::Identity(d_in, d_in)) <= kOperationTol;
  return QuantumOperation(d_in, d_out, std::move(kraus), channel);
}

QuantumOperation QuantumOperation::identity(Index dim) {
  return from_kraus(dim, dim, {ComplexMatrix::Identity(dim, dim)});
}

QuantumOperation QuantumOperation::unitary(const ComplexMatrix& u) {
  if (classify_contraction(u, 1e-10) != ContractionClass::kUnitary) {
    throw InvalidInput("QuantumOperation::unitary: matrix is not unitary");
  }
  return from_kraus(u.cols(), u.rows(), {u});
}

ComplexMatrix QuantumOperation::completeness() const {
  ComplexMatrix sum = ComplexMatrix::Zero(d_in_, d_in_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return sum;
}

StinespringOperator StinespringOperator::from(Index d_a, Index d_b, Index d_e, ComplexMatrix v) {
  require_finite(v, "StinespringOperator");
  if (v.rows() != d_b * d_e || v.cols() != d_a) {
    throw InvalidInput("StinespringOperator: matrix shape does not match (d_b * d_e) x d_a");
  }
  if (operator_norm(v) > 1.0 + kOperationTol) {
    throw InvalidInput("StinespringOperator: operator is not a contraction");
  }
  return StinespringOperator(d_a, d_b, d_e, std::move(v));
}

SmoothingParams SmoothingParams::make(double p, PositiveOperator sigma) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidInput("SmoothingParams: p must lie in [0, 1)");
  require_full_rank_state(sigma, kDefaultRankTol, "SmoothingParams");
  return SmoothingParams(p, std::move(sigma));
}

PositiveOperator reference_state(Index dim) {
  RealVector diag(dim);
  for (Index i = 0; i < dim; ++i) diag(i) = 1.0 / double(i + 1);
  diag /= diag.sum();
  return PositiveOperator::unchecked(diag.cast<Complex>().asDiagonal());
}

PositiveOperator apply(const QuantumOperation& op, const PositiveOperator& p) {
  if (p.dim() != op.d_in()) {
    throw InvalidInput("apply: input dimension " + std::to_string(p.dim()) +
                       " does not match operation input " + std::to_string(op.d_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(op.d_out(), op.d_out());
  for (const auto& k : op.kraus()) out += k * p.matrix() * k.adjoint();
  return PositiveOperator::unchecked(out);
}

PositiveOperator apply_extended(const QuantumOperation& op, const PositiveOperator& p, Index d_r) {
  if (d_r < 1 || p.dim() != op.d_in() * d_r) {
    throw InvalidInput("apply_extended: input dimension does not match d_in * d_r");
  }
  const ComplexMatrix id_r = ComplexMatrix::Identity(d_r, d_r);
  const Index n = op.d_out() * d_r;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : op.kraus()) {
    ComplexMatrix kk = kron(k, id_r);
    out += kk * p.matrix() * kk.adjoint();
  }
  return PositiveOperator::unchecked(out);
}

StinespringOperator stinespring_from_kraus(const QuantumOperation& op) {
  return stinespring_from_kraus(op, op.kraus_count());
}

StinespringOperator stinespring_from_kraus(const QuantumOperation& op, Index d_e) {
  if (d_e < op.kraus_count()) {
    throw InvalidInput("stinespring_from_kraus: environment smaller than the Kraus family");
  }
  const Index d_a = op.d_in();
  const Index d_b = op.d_out();
  ComplexMatrix v = ComplexMatrix::Zero(d_b * d_e, d_a);
  for (Index k = 0; k < op.kraus_count(); ++k) {
    const ComplexMatrix& kr = op.kraus()[std::size_t(k)];
    for (Index b = 0; b < d_b; ++b) v.row(b * d_e + k) = kr.row(b);
  }
  return StinespringOperator::from(d_a, d_b, d_e, std::move(v));
}

QuantumOperation kraus_from_stinespring(const StinespringOperator& v) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(std::size_t(v.d_e()));
  for (Index k = 0; k < v.d_e(); ++k) {
    ComplexMatrix kr(v.d_b(), v.d_a());
    for (Index b = 0; b < v.d_b(); ++b) kr.row(b) = v.matrix().row(b * v.d_e() + k);
    kraus.push_back(std::move(kr));
  }
  return QuantumOperation::from_kraus(v.d_a(), v.d_b(), std::move(kraus));
}

PositiveOperator apply(const StinespringOperator& v, const PositiveOperator& rho) {
  if (rho.dim() != v.d_a()) throw InvalidInput("apply: input dimension does not match d_a");
  ComplexMatrix full = v.matrix() * rho.matrix() * v.matrix().adjoint();
  return PositiveOperator::unchecked(partial_trace(full, v.d_b(), v.d_e(), Factor::kSecond));
}

std::pair<StinespringOperator, StinespringOperator> common_stinespring(const QuantumOperation& phi,
                                                                       const QuantumOperation& psi,
                                                                       Index pad) {
  if (phi.d_in() != psi.d_in() || phi.d_out() != psi.d_out()) {
    throw InvalidInput("common_stinespring: operations act between different spaces");
  }
  if (pad < 0) throw InvalidInput("common_stinespring: pad must be nonnegative");
  Index d_e = std::max(phi.kraus_count(), psi.kraus_count()) + pad;
  return {stinespring_from_kraus(phi, d_e), stinespring_from_kraus(psi, d_e)};
}

QuantumOperation complementary(const StinespringOperator& v) {
  // Kraus operators of the complementary map: L_b = (<b| (x) I_E) V.
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(std::size_t(v.d_b()));
  for (Index b = 0; b < v.d_b(); ++b) kraus.push_back(v.matrix().middleRows(b * v.d_e(), v.d_e()));
  return QuantumOperation::from_kraus(v.d_a(), v.d_e(), std::move(kraus));
}

PositiveOperator smooth_state(const PositiveOperator& rho, const SmoothingParams& sp) {
  if (rho.dim() != sp.sigma().dim()) {
    throw InvalidInput("smooth_state: state and reference state dimensions differ");
  }
  if (sp.p() == 0.0) return rho;
  return PositiveOperator::unchecked((1.0 - sp.p()) * rho.matrix() + sp.p() * sp.sigma().matrix());
}

QuantumOperation depolarize_operation(const QuantumOperation& phi, const SmoothingParams& sp) {
  if (sp.sigma().dim() != phi.d_out()) {
    throw InvalidInput("depolarize_operation: reference state must live on the output space");
  }
  const double p = sp.p();
  if (p == 0.0) return phi;
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : phi.kraus()) kraus.push_back(std::sqrt(1.0 - p) * k);
  EigenDecomposition ed = eigh(sp.sigma().hermitian());
  for (Index j = 0; j < phi.d_out(); ++j) {
    double w = std::sqrt(p * std::max(ed.eigenvalues(j), 0.0));
    for (Index m = 0; m < phi.d_in(); ++m) {
      ComplexMatrix k = ComplexMatrix::Zero(phi.d_out(), phi.d_in());
      k.col(m) = w * ed.eigenvectors.col(j);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumOperation::from_kraus(phi.d_in(), phi.d_out(), std::move(kraus));
}

HermitianOperator operation_support_subspace(const QuantumOperation& phi,
                                             const PositiveOperator& sigma, double rank_tol) {
  if (sigma.dim() != phi.d_in()) {
    throw InvalidInput("operation_support_subspace: reference state has the wrong dimension");
  }
  require_full_rank_state(sigma, rank_tol, "operation_support_subspace");
  return support_projector(apply(phi, sigma), rank_tol);
}

HermitianOperator environment_support_projector(const StinespringOperator& v_psi,
                                                const PositiveOperator& sigma, double rank_tol) {
  return operation_support_subspace(complementary(v_psi), sigma, rank_tol);
}

Purification purify(const PositiveOperator& rho, double rank_tol) {
  EigenDecomposition ed = eigh(rho.hermitian());
  const Index d_a = rho.dim();
  Index d_r = 0;
  double top = ed.eigenvalues(0);
  while (d_r < d_a && top > 0.0 && ed.eigenvalues(d_r) > rank_tol * top) ++d_r;
  d_r = std::max<Index>(d_r, 1);
  ComplexVector omega = ComplexVector::Zero(d_a * d_r);
  for (Index i = 0; i < d_r; ++i) {
    double w = std::sqrt(std::max(ed.eigenvalues(i), 0.0));
    for (Index a = 0; a < d_a; ++a) omega(a * d_r + i) = w * ed.eigenvectors(a, i);
  }
  return {std::move(omega), d_r};
}

}  // namespace ecbures
