#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ecbures/fidelity.hpp"
#include "ecbures/instances.hpp"
#include "ecbures/ksw.hpp"
#include "ecbures/random.hpp"

using namespace ecbures;

namespace {

Hamiltonian qubit_h() { return gen_hamiltonian(2, Spacing::kLinear); }

QuantumOperation channel(std::uint64_t seed, Index d = 2, Index k = 2) {
  InstanceSpec spec;
  spec.d_a = d;
  spec.d_b = d;
  spec.kraus_count = k;
  spec.seed = seed;
  return gen_random_channel(spec);
}

KswProblem problem(const QuantumOperation& phi, const QuantumOperation& psi, const Hamiltonian& h,
                   double e, Index pad = 2) {
  auto [vp, vq] = common_stinespring(phi, psi, pad);
  return KswProblem::make(vp, vq, h, EnergyBound{e}, SmoothingParams::make(0.0, PositiveOperator::maximally_mixed(phi.d_out())));
}

}  // namespace

// Identity versus conjugation by Z on a qubit with H = diag(0, 1): the
// distance is 2 sqrt(E) for E <= 1/2.
TEST_CASE("dephasing closed form") {
  QuantumOperation id = QuantumOperation::identity(2);
  QuantumOperation z = gen_dephasing(2, 1.0);
  for (double e : {0.04, 0.16, 0.25}) {
    ContinuationOptions opts;
    opts.saddle.tol = 1e-5;
    SaddleCertificate c = solve_with_continuation(id, z, qubit_h(), EnergyBound{e}, opts);
    CHECK(c.converged);
    CHECK(std::abs(c.lower_bound - 2.0 * std::sqrt(e)) < 1e-4);
    CHECK(std::abs(c.upper_bound - 2.0 * std::sqrt(e)) < 1e-4);
    CHECK(std::abs(direct_ecbures(id, z, qubit_h(), EnergyBound{e}, 2, 1) - 2.0 * std::sqrt(e)) < 1e-4);
  }
}

TEST_CASE("identical operations are at distance zero") {
  QuantumOperation phi = channel(3);
  ContinuationOptions opts;
  opts.pad = 1;
  SaddleCertificate c = solve_with_continuation(phi, phi, qubit_h(), EnergyBound{0.5}, opts);
  CHECK(c.upper_bound < 1e-4);
  CHECK(c.lower_bound <= c.upper_bound + 1e-8);
}

TEST_CASE("sandwich on random channels") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    QuantumOperation phi = channel(100 + s), psi = channel(200 + s);
    ContinuationOptions opts;
    opts.pad = 2;
    SaddleCertificate c = solve_with_continuation(phi, psi, qubit_h(), EnergyBound{0.3}, opts);
    CHECK(c.lower_bound <= c.upper_bound + 1e-8);
    CHECK(c.gap <= 1e-4);
    CHECK(c.gap == doctest::Approx(c.upper_bound - c.lower_bound));
    auto [vp, vq] = common_stinespring(phi, psi, 2);
    CHECK(max_abs(kron(ComplexMatrix::Identity(2, 2), c.u.adjoint() * c.u) * vq.matrix() - vq.matrix()) < 1e-7);
    double direct = direct_ecbures(phi, psi, qubit_h(), EnergyBound{0.3}, 2, s);
    CHECK(direct <= c.upper_bound + 1e-8);
  }
}

TEST_CASE("objective at a best response equals the trace-norm formula") {
  Rng rng(1);
  KswProblem prob = problem(channel(5), channel(6), qubit_h(), 0.4);
  for (int t = 0; t < 10; ++t) {
    PositiveOperator rho = project_to_energy_states(random_hermitian(rng, 2), qubit_h(), EnergyBound{0.4});
    ComplexMatrix u = u_step(prob, rho);
    double f = objective_fn(prob, rho, u);
    for (int k = 0; k < 5; ++k) {
      ComplexMatrix other = extract_partial_isometry(random_unitary(rng, prob.d_e()), prob.p_psi());
      CHECK(objective_fn(prob, rho, other) >= f - 1e-10);
    }
  }
}

TEST_CASE("lower bound is a fidelity witness") {
  QuantumOperation phi = channel(8), psi = channel(9);
  PositiveOperator rho = PositiveOperator::maximally_mixed(2);
  double lb = ecbures_lower_bound(phi, psi, qubit_h(), EnergyBound{0.5}, rho);
  Purification w = purify(rho);
  PositiveOperator omega = PositiveOperator::pure(w.vector);
  double witness = bures_distance(apply_extended(phi, omega, w.d_r), apply_extended(psi, omega, w.d_r));
  CHECK(lb == doctest::Approx(witness).epsilon(1e-12));
  CHECK_THROWS_AS(ecbures_lower_bound(phi, psi, qubit_h(), EnergyBound{0.2}, rho), InvalidInput);
}

TEST_CASE("upper bound requires membership in W_psi") {
  KswProblem prob = problem(channel(1), channel(2), qubit_h(), 0.4);
  ComplexMatrix bad = 0.5 * ComplexMatrix::Identity(prob.d_e(), prob.d_e());
  CHECK_THROWS_AS(ksw_upper_bound(prob, bad), InvalidInput);
  ComplexMatrix good = complete_to_w_psi(prob, bad);
  CHECK(w_psi_residual(prob, good) <= kMembershipTol);
}

TEST_CASE("padding sweep is monotone") {
  QuantumOperation phi = channel(40), psi = channel(41);
  std::vector<SaddleCertificate> sweep = pad_sweep(phi, psi, qubit_h(), EnergyBound{0.6}, {0, 1, 2, 4}, {});
  REQUIRE(sweep.size() == 4);
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].upper_bound <= sweep[i - 1].upper_bound + 1e-8);
}

TEST_CASE("degenerate operation triggers the depolarized stages") {
  QuantumOperation phi = gen_prepare_state(2, ComplexVector::Unit(2, 0));
  ContinuationOptions opts;
  opts.pad = 2;
  SaddleCertificate c = solve_with_continuation(phi, channel(12), qubit_h(), EnergyBound{0.4}, opts);
  REQUIRE(c.p_trace.size() == 5);
  CHECK(c.p_trace.front().depolarized);
  CHECK(c.p_trace.back().p == 0.0);
  CHECK(c.lower_bound <= c.upper_bound + 1e-8);
}

TEST_CASE("invalid solver inputs") {
  QuantumOperation a = channel(1), b = channel(2, 3);
  CHECK_THROWS_AS(solve_with_continuation(a, b, qubit_h(), EnergyBound{0.3}), InvalidInput);
  ContinuationOptions opts;
  opts.schedule = {1e-2, 1e-1};
  CHECK_THROWS_AS(solve_with_continuation(a, a, qubit_h(), EnergyBound{0.3}, opts), InvalidInput);
  CHECK_THROWS_AS(solve_with_continuation(a, a, qubit_h(), EnergyBound{0.0}), InvalidInput);
}
