#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ecbures/fidelity.hpp"
#include "ecbures/random.hpp"

using namespace ecbures;

namespace {

PositiveOperator qubit_a() {
  ComplexMatrix m(2, 2);
  m << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  return PositiveOperator::from(m);
}

PositiveOperator qubit_b() {
  ComplexMatrix m(2, 2);
  m << 0.4, Complex(0.0, -0.1), Complex(0.0, 0.1), 0.6;
  return PositiveOperator::from(m);
}

}  // namespace

// Reference values from scipy.linalg.sqrtm on the same matrices.
TEST_CASE("frozen qubit fidelity and Bures distance") {
  CHECK(fidelity(qubit_a(), qubit_b()) == doctest::Approx(0.8236665218650167).epsilon(1e-12));
  CHECK(bures_distance(qubit_a(), qubit_b()) == doctest::Approx(0.42997499040090487).epsilon(1e-11));
}

TEST_CASE("frozen subnormalized rank-deficient pair") {
  ComplexMatrix r = ComplexMatrix::Zero(3, 3);
  r(0, 0) = 0.5;
  r(1, 1) = 0.3;
  ComplexMatrix s(3, 3);
  s << 0.2, 0.1, 0.0, 0.1, 0.3, 0.05, 0.0, 0.05, 0.1;
  PositiveOperator rho = PositiveOperator::from(r), sigma = PositiveOperator::from(s);
  CHECK(fidelity(rho, sigma) == doctest::Approx(0.36320508075688773).epsilon(1e-12));
  CHECK(bures_distance(rho, sigma) == doctest::Approx(0.44121427404603153).epsilon(1e-11));
}

TEST_CASE("pure states give the squared overlap") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    ComplexVector a = random_unit_vector(rng, 3), b = random_unit_vector(rng, 3);
    double f = fidelity(PositiveOperator::pure(a), PositiveOperator::pure(b));
    CHECK(std::abs(f - std::norm(a.dot(b))) < 1e-9);
  }
}

TEST_CASE("commuting states give the classical fidelity") {
  RealVector p(3), q(3);
  p << 0.5, 0.3, 0.2;
  q << 0.1, 0.6, 0.3;
  double classical = std::pow((p.array() * q.array()).sqrt().sum(), 2);
  double f = fidelity(PositiveOperator::from(p.cast<Complex>().asDiagonal()),
                      PositiveOperator::from(q.cast<Complex>().asDiagonal()));
  CHECK(f == doctest::Approx(classical).epsilon(1e-14));
}

TEST_CASE("fidelity properties on random pairs") {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    Index d = 2 + t % 4;
    PositiveOperator rho = random_psd(rng, d, 1 + t % d, 1.0 - 0.5 * rng.uniform());
    PositiveOperator sigma = random_psd(rng, d, 1 + (t / 2) % d, 1.0);
    double f = fidelity(rho, sigma);
    CHECK(std::abs(f - fidelity(sigma, rho)) < 1e-9);
    CHECK(f <= rho.trace() * sigma.trace() + 1e-12);
    CHECK(std::abs(fidelity(rho, rho) - rho.trace() * rho.trace()) < 1e-9);
    CHECK(bures_distance(rho, rho) < 1e-7);
  }
}

TEST_CASE("aligned purifications attain the fidelity") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    PositiveOperator rho = random_state(rng, 3, 3);
    PositiveOperator sigma = random_state(rng, 3, 3);
    Purification a = purify(rho), b = purify(sigma);
    AlignmentResult al = align_purifications(a.vector, b.vector, 3, 3);
    CHECK(std::abs(al.fidelity_value - fidelity(rho, sigma)) < 1e-10);
    CHECK(al.satisfies_u_cond);
    CHECK(al.overlap.real() >= 0.0);
  }
}

TEST_CASE("dimension mismatch is invalid input") {
  CHECK_THROWS_AS(fidelity(PositiveOperator::maximally_mixed(2), PositiveOperator::maximally_mixed(3)),
                  InvalidInput);
}
