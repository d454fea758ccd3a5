#include "ecbures/linops.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <vector>

namespace ecbures {

namespace {

// Below this magnitude a component is treated as zero when fixing phases.
constexpr double kPhaseZero = 1e-12;

Index first_nonzero(const ComplexVector& v) {
  double scale = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kPhaseZero * std::max(scale, 1.0)) return i;
  }
  return 0;
}

ComplexMatrix symmetrized(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() < 1 || m.cols() < 1) throw InvalidInput(what + ": empty matrix");
  if (!m.allFinite()) throw InvalidInput(what + ": non-finite entry");
}

// --- HermitianOperator -------------------------------------------------------

HermitianOperator HermitianOperator::from(const ComplexMatrix& m) {
  require_finite(m, "HermitianOperator");
  if (m.rows() != m.cols()) throw InvalidInput("HermitianOperator: matrix is not square");
  double asym = max_abs(m - m.adjoint());
  if (asym > kHermiticityTol * max_abs(m)) {
    throw InvalidInput("HermitianOperator: matrix is not Hermitian (asymmetry " +
                       std::to_string(asym) + ")");
  }
  return HermitianOperator(symmetrized(m));
}

HermitianOperator HermitianOperator::unchecked(const ComplexMatrix& m) {
  return HermitianOperator(symmetrized(m));
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

// --- PositiveOperator --------------------------------------------------------

PositiveOperator::PositiveOperator(HermitianOperator h)
    : h_(std::move(h)), trace_(h_.matrix().trace().real()) {}

PositiveOperator PositiveOperator::from(const ComplexMatrix& m) {
  HermitianOperator h = HermitianOperator::from(m);
  EigenDecomposition ed = eigh(h);
  const Index n = ed.eigenvalues.size();
  double scale = std::max(std::abs(ed.eigenvalues(0)), std::abs(ed.eigenvalues(n - 1)));
  double lowest = ed.eigenvalues(n - 1);
  if (lowest >= 0.0) return PositiveOperator(std::move(h));
  if (lowest < -kPsdTol * scale) {
    throw InvalidInput("PositiveOperator: eigenvalue " + std::to_string(lowest) +
                       " is below the positivity tolerance");
  }
  RealVector clipped = ed.eigenvalues.cwiseMax(0.0);
  ComplexMatrix rebuilt = ed.eigenvectors * clipped.asDiagonal() * ed.eigenvectors.adjoint();
  return PositiveOperator(HermitianOperator::unchecked(rebuilt));
}

PositiveOperator PositiveOperator::unchecked(const ComplexMatrix& m) {
  return PositiveOperator(HermitianOperator::unchecked(m));
}

PositiveOperator PositiveOperator::pure(const ComplexVector& v) {
  return PositiveOperator(HermitianOperator::unchecked(v * v.adjoint()));
}

PositiveOperator PositiveOperator::identity(Index dim) {
  return PositiveOperator(HermitianOperator::identity(dim));
}

PositiveOperator PositiveOperator::maximally_mixed(Index dim) {
  return PositiveOperator::unchecked(ComplexMatrix::Identity(dim, dim) / double(dim));
}

// --- spectral routines -------------------------------------------------------

EigenDecomposition eigh(const HermitianOperator& m) {
  const Index n = m.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigh: eigensolver did not converge");

  // Eigen returns ascending order; flip and fix phases.
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  std::vector<Index> lead(n);
  for (Index j = 0; j < n; ++j) {
    auto col = out.eigenvectors.col(j);
    Index k = first_nonzero(col);
    lead[j] = k;
    Complex c = col(k);
    if (std::abs(c) > 0.0) col *= std::conj(c) / std::abs(c);
    col(k) = Complex(col(k).real(), 0.0);
  }

  // Reorder numerically tied groups by the index of their leading component.
  double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  double tie = 64 * std::numeric_limits<double>::epsilon() * scale;
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && out.eigenvalues(end - 1) - out.eigenvalues(end) <= tie) ++end;
    if (end - start > 1) {
      std::vector<Index> order(end - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(),
                       [&](Index a, Index b) { return lead[a] < lead[b]; });
      ComplexMatrix cols(n, end - start);
      RealVector vals(end - start);
      for (Index i = 0; i < end - start; ++i) {
        cols.col(i) = out.eigenvectors.col(order[i]);
        vals(i) = out.eigenvalues(order[i]);
      }
      out.eigenvectors.middleCols(start, end - start) = cols;
      out.eigenvalues.segment(start, end - start) = vals;
    }
    start = end;
  }
  return out;
}

PositiveOperator psd_sqrt(const PositiveOperator& p) {
  EigenDecomposition ed = eigh(p.hermitian());
  RealVector roots = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return PositiveOperator::unchecked(ed.eigenvectors * roots.asDiagonal() *
                                     ed.eigenvectors.adjoint());
}

double trace_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  return svd.singularValues().sum();
}

PolarDecomposition polar(const ComplexMatrix& x, double rank_tol) {
  require_finite(x, "polar");
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  const ComplexMatrix& u = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;

  ComplexMatrix w = u.leftCols(r) * v.leftCols(r).adjoint();
  if (r == 0) w = ComplexMatrix::Zero(x.rows(), x.cols());
  ComplexMatrix modulus = v * s.asDiagonal() * v.adjoint();
  return {std::move(w), PositiveOperator::unchecked(modulus)};
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index d_x, Index d_y, Factor traced) {
  if (m.rows() != d_x * d_y || m.cols() != d_x * d_y) {
    throw InvalidInput("partial_trace: operator dimension " + std::to_string(m.rows()) +
                       " does not match factor dimensions " + std::to_string(d_x) + "x" +
                       std::to_string(d_y));
  }
  if (traced == Factor::kSecond) {
    ComplexMatrix out = ComplexMatrix::Zero(d_x, d_x);
    for (Index i = 0; i < d_x; ++i)
      for (Index j = 0; j < d_x; ++j)
        out(i, j) = m.block(i * d_y, j * d_y, d_y, d_y).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_y, d_y);
  for (Index i = 0; i < d_x; ++i) out += m.block(i * d_y, i * d_y, d_y, d_y);
  return out;
}

PositiveOperator partial_trace(const PositiveOperator& p, Index d_x, Index d_y, Factor traced) {
  return PositiveOperator::unchecked(partial_trace(p.matrix(), d_x, d_y, traced));
}

HermitianOperator support_projector(const PositiveOperator& p, double rank_tol) {
  EigenDecomposition ed = eigh(p.hermitian());
  const Index n = p.dim();
  ComplexMatrix proj = ComplexMatrix::Zero(n, n);
  double top = ed.eigenvalues(0);
  if (top <= 0.0) return HermitianOperator::zero(n);
  for (Index j = 0; j < n && ed.eigenvalues(j) > rank_tol * top; ++j) {
    proj += ed.eigenvectors.col(j) * ed.eigenvectors.col(j).adjoint();
  }
  return HermitianOperator::unchecked(proj);
}

Index rank(const PositiveOperator& p, double rank_tol) {
  EigenDecomposition ed = eigh(p.hermitian());
  double top = ed.eigenvalues(0);
  if (top <= 0.0) return 0;
  Index r = 0;
  while (r < ed.eigenvalues.size() && ed.eigenvalues(r) > rank_tol * top) ++r;
  return r;
}

ContractionClass classify_contraction(const ComplexMatrix& x, double tol) {
  if (operator_norm(x) > 1.0 + tol) return ContractionClass::kGeneral;
  ComplexMatrix gram = x.adjoint() * x;
  if (max_abs(gram * gram - gram) > tol) return ContractionClass::kContraction;
  if (max_abs(gram - ComplexMatrix::Identity(x.cols(), x.cols())) > tol)
    return ContractionClass::kPartialIsometry;
  ComplexMatrix cogram = x * x.adjoint();
  if (x.rows() == x.cols() && max_abs(cogram - ComplexMatrix::Identity(x.rows(), x.rows())) <= tol)
    return ContractionClass::kUnitary;
  return ContractionClass::kIsometry;
}

const char* to_string(ContractionClass c) {
  switch (c) {
    case ContractionClass::kGeneral: return "general";
    case ContractionClass::kContraction: return "contraction";
    case ContractionClass::kPartialIsometry: return "partial_isometry";
    case ContractionClass::kIsometry: return "isometry";
    case ContractionClass::kUnitary: return "unitary";
  }
  return "general";
}

}  // namespace ecbures
