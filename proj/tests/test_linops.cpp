#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecbures/linops.hpp"
#include "ecbures/random.hpp"

using namespace ecbures;

TEST_CASE("kron of identities and block layout") {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  ComplexMatrix k = kron(ComplexMatrix::Identity(2, 2), a);
  CHECK(k.rows() == 4);
  CHECK(max_abs(k.block(2, 2, 2, 2) - a) == 0.0);
  CHECK(max_abs(k.block(0, 2, 2, 2)) == 0.0);
}

TEST_CASE("partial trace of a product recovers the factors") {
  Rng rng(11);
  PositiveOperator x = random_state(rng, 2, 2);
  PositiveOperator y = random_state(rng, 3, 3);
  ComplexMatrix xy = kron(x.matrix(), y.matrix());
  CHECK(max_abs(partial_trace(xy, 2, 3, Factor::kFirst) - y.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(xy, 2, 3, Factor::kSecond) - x.matrix()) < 1e-14);
}

TEST_CASE("PSD clipping policy") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1e-12;
  PositiveOperator p = PositiveOperator::from(m);
  CHECK(eigh(p.hermitian()).eigenvalues.minCoeff() >= 0.0);
  m(1, 1) = -1e-6;
  CHECK_THROWS_AS(PositiveOperator::from(m), InvalidInput);
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator::from(m), InvalidInput);
}

TEST_CASE("eigh returns descending eigenvalues with a valid basis") {
  Rng rng(3);
  HermitianOperator h = random_hermitian(rng, 4);
  EigenDecomposition ed = eigh(h);
  for (Index i = 1; i < 4; ++i) CHECK(ed.eigenvalues(i - 1) >= ed.eigenvalues(i));
  ComplexMatrix back = ed.eigenvectors * ed.eigenvalues.cast<Complex>().asDiagonal() * ed.eigenvectors.adjoint();
  CHECK(max_abs(back - h.matrix()) < 1e-13);
}

TEST_CASE("trace norm of a diagonal matrix") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -4.0;
  CHECK(trace_norm(m) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("polar decomposition reconstructs and classifies") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix x = gaussian_matrix(rng, 3, 3);
    PolarDecomposition pd = polar(x);
    CHECK(max_abs(pd.isometry * pd.modulus.matrix() - x) < 1e-12);
    CHECK(classify_contraction(pd.isometry, 1e-10) == ContractionClass::kUnitary);
  }
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  CHECK(classify_contraction(p, 1e-10) == ContractionClass::kPartialIsometry);
  p(1, 1) = 0.5;
  CHECK(classify_contraction(p, 1e-10) == ContractionClass::kContraction);
  p(1, 1) = 2.0;
  CHECK(classify_contraction(p, 1e-10) == ContractionClass::kGeneral);
}

TEST_CASE("square root squares back") {
  Rng rng(8);
  PositiveOperator p = random_psd(rng, 4, 2, 0.7);
  ComplexMatrix r = psd_sqrt(p).matrix();
  CHECK(max_abs(r * r - p.matrix()) < 1e-12);
  CHECK(rank(p) == 2);
}
