#pragma once

// Dense complex linear algebra shared by every other module: validated
// Hermitian / positive operator wrappers, deterministic eigendecomposition,
// square roots, polar decomposition, partial traces and support projectors.

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "ecbures/errors.hpp"

namespace ecbures {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance on ||M - M^dagger||_max.
inline constexpr double kHermiticityTol = 1e-12;
/// Relative tolerance below which negative eigenvalues are clipped to zero.
inline constexpr double kPsdTol = 1e-10;
/// Default relative threshold separating support from numerical noise.
inline constexpr double kDefaultRankTol = 1e-8;

double max_abs(const ComplexMatrix& m);
/// Largest singular value.
double operator_norm(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Throws InvalidInput if the matrix is empty or holds a NaN/Inf entry.
void require_finite(const ComplexMatrix& m, const std::string& what);

class HermitianOperator {
 public:
  /// Validates hermiticity and stores the exactly symmetrized matrix.
  static HermitianOperator from(const ComplexMatrix& m);
  /// Symmetrizes without validation; for operators Hermitian by construction.
  static HermitianOperator unchecked(const ComplexMatrix& m);
  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

class PositiveOperator {
 public:
  /// Validates positivity. Eigenvalues in [-kPsdTol * ||M||, 0) are clipped to
  /// zero; anything more negative throws InvalidInput.
  static PositiveOperator from(const ComplexMatrix& m);
  /// Symmetrizes without the eigenvalue check; for operators such as A A^dagger
  /// or Kraus images that are positive by construction.
  static PositiveOperator unchecked(const ComplexMatrix& m);
  static PositiveOperator pure(const ComplexVector& v);
  static PositiveOperator identity(Index dim);
  static PositiveOperator maximally_mixed(Index dim);

  Index dim() const { return h_.dim(); }
  double trace() const { return trace_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianOperator& hermitian() const { return h_; }

 private:
  explicit PositiveOperator(HermitianOperator h);
  HermitianOperator h_;
  double trace_;
};

struct EigenDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

/// Eigenvalues in descending order. Each eigenvector has its first nonzero
/// component real and positive; within (numerically) tied eigenvalues the
/// columns are ordered by ascending index of that first nonzero component.
EigenDecomposition eigh(const HermitianOperator& m);

PositiveOperator psd_sqrt(const PositiveOperator& p);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& x);

struct PolarDecomposition {
  ComplexMatrix isometry;  // partial isometry W, initial space = supp(P)
  PositiveOperator modulus;  // P = sqrt(X^dagger X)
};

/// X = W P. Singular values at or below rank_tol * sigma_max are treated as
/// zero, so W^dagger W is the support projector of P.
PolarDecomposition polar(const ComplexMatrix& x, double rank_tol = kDefaultRankTol);

enum class Factor { kFirst, kSecond };

/// Partial trace of an operator on H_X (x) H_Y (row index x * d_y + y) over
/// the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index d_x, Index d_y, Factor traced);
PositiveOperator partial_trace(const PositiveOperator& p, Index d_x, Index d_y, Factor traced);

/// Orthogonal projector onto the span of eigenvectors with eigenvalue above
/// rank_tol * lambda_max.
HermitianOperator support_projector(const PositiveOperator& p, double rank_tol = kDefaultRankTol);
Index rank(const PositiveOperator& p, double rank_tol = kDefaultRankTol);

enum class ContractionClass { kGeneral, kContraction, kPartialIsometry, kIsometry, kUnitary };

/// Strongest label whose defining predicate holds within tol.
ContractionClass classify_contraction(const ComplexMatrix& x, double tol);
const char* to_string(ContractionClass c);

}  // namespace ecbures
