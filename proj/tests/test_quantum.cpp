#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecbures/instances.hpp"
#include "ecbures/quantum.hpp"
#include "ecbures/random.hpp"

using namespace ecbures;

namespace {

QuantumOperation channel(std::uint64_t seed, Index d_a = 2, Index d_b = 2, Index k = 2) {
  InstanceSpec spec;
  spec.d_a = d_a;
  spec.d_b = d_b;
  spec.kraus_count = k;
  spec.seed = seed;
  return gen_random_channel(spec);
}

}  // namespace

TEST_CASE("Kraus validation") {
  ComplexMatrix k = 2.0 * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(QuantumOperation::from_kraus(2, 2, {k}), InvalidInput);
  CHECK_THROWS_AS(QuantumOperation::from_kraus(2, 3, {ComplexMatrix::Identity(2, 2)}), InvalidInput);
  CHECK(QuantumOperation::identity(3).is_channel());
  CHECK_FALSE(QuantumOperation::from_kraus(2, 2, {0.5 * ComplexMatrix::Identity(2, 2)}).is_channel());
}

TEST_CASE("channels preserve trace and positivity") {
  Rng rng(1);
  QuantumOperation phi = channel(7, 2, 3, 2);
  for (int t = 0; t < 10; ++t) {
    PositiveOperator rho = random_state(rng, 2, 1 + t % 2);
    PositiveOperator out = apply(phi, rho);
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(eigh(out.hermitian()).eigenvalues.minCoeff() > -1e-14);
  }
}

TEST_CASE("Stinespring round trip and complementary marginals") {
  Rng rng(2);
  QuantumOperation phi = channel(9, 2, 2, 3);
  StinespringOperator v = stinespring_from_kraus(phi, 5);
  CHECK(v.d_e() == 5);
  QuantumOperation back = kraus_from_stinespring(v);
  PositiveOperator rho = random_state(rng, 2, 2);
  CHECK(max_abs(apply(back, rho).matrix() - apply(phi, rho).matrix()) < 1e-14);
  CHECK(max_abs(apply(v, rho).matrix() - apply(phi, rho).matrix()) < 1e-14);
  CHECK(apply(complementary(v), rho).trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("common dilation shares the environment") {
  auto [vp, vq] = common_stinespring(channel(1, 2, 2, 2), channel(2, 2, 2, 3), 2);
  CHECK(vp.d_e() == 5);
  CHECK(vq.d_e() == 5);
}

TEST_CASE("purification reduces to the state") {
  Rng rng(3);
  for (Index r = 1; r <= 3; ++r) {
    PositiveOperator rho = random_state(rng, 3, r);
    Purification w = purify(rho);
    CHECK(w.d_r == r);
    ComplexMatrix omega = w.vector * w.vector.adjoint();
    CHECK(max_abs(partial_trace(omega, 3, w.d_r, Factor::kSecond) - rho.matrix()) < 1e-14);
  }
}

TEST_CASE("depolarized operation") {
  QuantumOperation phi = gen_prepare_state(2, ComplexVector::Unit(2, 0));
  SmoothingParams sp = SmoothingParams::make(0.25, PositiveOperator::maximally_mixed(2));
  QuantumOperation dep = depolarize_operation(phi, sp);
  PositiveOperator out = apply(dep, PositiveOperator::maximally_mixed(2));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(SmoothingParams::make(1.0, PositiveOperator::maximally_mixed(2)), InvalidInput);
}

TEST_CASE("support subspace of a state preparation is one-dimensional") {
  QuantumOperation phi = gen_prepare_state(2, ComplexVector::Unit(3, 1));
  HermitianOperator p = operation_support_subspace(phi, reference_state(2));
  CHECK(p.matrix().trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(p.matrix()(1, 1) - 1.0) < 1e-12);
}

TEST_CASE("reference state is nondegenerate") {
  RealVector ev = eigh(reference_state(4).hermitian()).eigenvalues;
  for (Index i = 1; i < 4; ++i) CHECK(ev(i - 1) - ev(i) > 1e-3);
}
