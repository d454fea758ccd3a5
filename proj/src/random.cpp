#include "ecbures/random.hpp"

#include <cmath>
#include <numbers>

namespace ecbures {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x3c6ef372fe94f82bULL));
}

std::uint64_t Rng::next_u64() {
  return mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_));
}

double Rng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

ComplexMatrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_isometry(Rng& rng, Index rows, Index cols) {
  if (cols > rows) throw InvalidInput("random_isometry: more columns than rows");
  ComplexMatrix g = gaussian_matrix(rng, rows, cols);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    Complex r = qr.matrixQR()(j, j);
    double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

ComplexMatrix random_unitary(Rng& rng, Index dim) { return random_isometry(rng, dim, dim); }

ComplexVector random_unit_vector(Rng& rng, Index dim) {
  ComplexVector v = gaussian_matrix(rng, dim, 1).col(0);
  return v / v.norm();
}

PositiveOperator random_state(Rng& rng, Index dim, Index rank) {
  return random_psd(rng, dim, rank, 1.0);
}

PositiveOperator random_psd(Rng& rng, Index dim, Index rank, double trace) {
  if (rank < 1 || rank > dim) throw InvalidInput("random_psd: rank out of range");
  ComplexMatrix g = gaussian_matrix(rng, dim, rank);
  ComplexMatrix m = g * g.adjoint();
  m *= trace / m.trace().real();
  return PositiveOperator::unchecked(m);
}

ComplexMatrix random_contraction(Rng& rng, Index rows, Index cols) {
  ComplexMatrix g = gaussian_matrix(rng, rows, cols);
  return g * (rng.uniform() / operator_norm(g));
}

RealVector random_hermitian_spectrum(Rng& rng, Index dim, double lo, double hi) {
  RealVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = lo + (hi - lo) * rng.uniform();
  return v;
}

HermitianOperator random_hermitian(Rng& rng, Index dim) {
  ComplexMatrix g = gaussian_matrix(rng, dim, dim);
  return HermitianOperator::unchecked(0.5 * (g + g.adjoint()));
}

}  // namespace ecbures
