#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ecbures/enorm.hpp"
#include "ecbures/random.hpp"

using namespace ecbures;

namespace {

Hamiltonian levels(std::initializer_list<double> ev) {
  RealVector v(Index(ev.size()));
  Index i = 0;
  for (double x : ev) v(i++) = x;
  return Hamiltonian::diagonal(v);
}

}  // namespace

TEST_CASE("projector onto the excited level") {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(1, 1) = 1.0;
  for (double e : {0.1, 0.25, 0.5, 2.0}) {
    CHECK(std::abs(enorm(x, levels({0.0, 1.0}), EnergyBound{e}) - std::sqrt(std::min(e, 1.0))) < 1e-9);
  }
}

// Active constraint: the optimum is sqrt(1-E)|0> + sqrt(E)|1>, so
// ||X||_E^2 = 1 + 4E + 4 sqrt(E(1-E)) for X = [[1,2],[0,1]].
TEST_CASE("closed-form qubit value") {
  ComplexMatrix x(2, 2);
  x << 1.0, 2.0, 0.0, 1.0;
  double e = 0.3;
  double exact = std::sqrt(1.0 + 4.0 * e + 4.0 * std::sqrt(e * (1.0 - e)));
  CHECK(enorm(x, levels({0.0, 1.0}), EnergyBound{e}) == doctest::Approx(exact).epsilon(1e-10));
}

// Reference value from an SDP solve (cvxpy/SCS, eps 1e-12).
TEST_CASE("frozen qutrit value") {
  ComplexMatrix x(3, 3);
  x << 1.0, Complex(0.0, 0.5), 0.0, 0.0, 2.0, 1.0, 0.3, 0.0, 1.0;
  CHECK(std::abs(enorm(x, levels({0.0, 1.0, 2.0}), EnergyBound{0.7}) - 2.04814343887854) < 1e-7);
}

TEST_CASE("energy above the spectrum gives the operator norm") {
  Rng rng(2);
  ComplexMatrix x = gaussian_matrix(rng, 3, 3);
  CHECK(enorm(x, levels({0.0, 1.0, 2.0}), EnergyBound{5.0}) ==
        doctest::Approx(operator_norm(x)).epsilon(1e-10));
}

TEST_CASE("energy at or below the ground level is rejected") {
  ComplexMatrix x = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(enorm(x, levels({0.5, 1.0}), EnergyBound{0.5}), InvalidInput);
  CHECK_THROWS_AS(enorm(x, levels({0.5, 1.0}), EnergyBound{0.1}), InvalidInput);
}

TEST_CASE("duality gap and primal feasibility") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    Index d = 2 + t % 3;
    Hamiltonian h = Hamiltonian::from_spectrum(random_hermitian_spectrum(rng, d, 0.0, 2.0), random_unitary(rng, d));
    HermitianOperator m = random_hermitian(rng, d);
    EnergyBound e{h.ground_energy() + 0.1 + rng.uniform()};
    ConstrainedOptimum opt = max_linear_over_energy_ball(m, h, e);
    CHECK(opt.value - opt.primal_value < 1e-9);
    CHECK(opt.value - opt.primal_value > -1e-12);
    CHECK((h.matrix() * opt.rho_star.matrix()).trace().real() <= e.value + 1e-9);
    CHECK(opt.rho_star.trace() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("E-norm is a norm and dominated by the operator norm") {
  Rng rng(5);
  Hamiltonian h = levels({0.0, 1.0, 3.0});
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a = gaussian_matrix(rng, 3, 3), b = gaussian_matrix(rng, 3, 3);
    EnergyBound e{0.2 + 2.0 * rng.uniform()};
    double na = enorm(a, h, e), nb = enorm(b, h, e);
    CHECK(enorm(a + b, h, e) <= na + nb + 1e-9);
    CHECK(enorm(Complex(0.0, -2.0) * a, h, e) == doctest::Approx(2.0 * na).epsilon(1e-9));
    CHECK(na <= operator_norm(a) + 1e-9);
  }
}

TEST_CASE("smoothed E-norm matches its definition") {
  Rng rng(6);
  Hamiltonian h = levels({0.0, 1.0});
  ComplexMatrix x = gaussian_matrix(rng, 2, 2);
  PositiveOperator sigma = random_state(rng, 2, 2);
  SmoothingParams sp = SmoothingParams::make(0.1, sigma);
  double n = enorm(x, h, EnergyBound{0.3});
  double expected = std::sqrt(0.9 * n * n + 0.1 * (x * sigma.matrix() * x.adjoint()).trace().real());
  CHECK(enorm_smoothed(x, h, EnergyBound{0.3}, sp) == doctest::Approx(expected).epsilon(1e-12));
}
