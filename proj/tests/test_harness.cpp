#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecbures/instances.hpp"
#include "ecbures/random.hpp"
#include "ecbures/serialization.hpp"
#include "ecbures/verification.hpp"

using namespace ecbures;

namespace {

InstanceSpec spec_for(InstanceKind kind, Index d_a, Index d_b, Index k, std::uint64_t seed) {
  InstanceSpec s;
  s.kind = kind;
  s.d_a = d_a;
  s.d_b = d_b;
  s.kraus_count = k;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("generator is deterministic and splits into substreams") {
  Rng a(42), b(42), c(substream(42, 1));
  for (int i = 0; i < 5; ++i) {
    std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("random channel is exact and reproducible") {
  InstanceSpec s = spec_for(InstanceKind::kRandomChannel, 2, 2, 4, 17);
  QuantumOperation a = gen_random_channel(s), b = gen_random_channel(s);
  CHECK(max_abs(a.completeness() - ComplexMatrix::Identity(2, 2)) < 1e-12);
  for (Index k = 0; k < 4; ++k) CHECK(max_abs(a.kraus()[std::size_t(k)] - b.kraus()[std::size_t(k)]) == 0.0);
  CHECK_THROWS_AS(gen_random_channel(spec_for(InstanceKind::kRandomChannel, 4, 1, 2, 0)), InvalidInput);
  QuantumOperation unitary = gen_random_channel(spec_for(InstanceKind::kRandomChannel, 2, 2, 1, 3));
  CHECK(classify_contraction(unitary.kraus()[0], 1e-12) == ContractionClass::kUnitary);
}

TEST_CASE("random operation is strictly trace decreasing") {
  InstanceSpec s = spec_for(InstanceKind::kRandomOperation, 3, 2, 2, 5);
  QuantumOperation op = gen_random_operation(s);
  RealVector defect = eigh(HermitianOperator::from(ComplexMatrix::Identity(3, 3) - op.completeness())).eigenvalues;
  CHECK(defect.minCoeff() > -1e-12);
  CHECK(defect.maxCoeff() > 1e-6);
  CHECK(gen_random_operation(s, RealVector::Ones(3)).is_channel());
  QuantumOperation zero = gen_random_operation(s, RealVector::Zero(3));
  CHECK(max_abs(zero.completeness()) == 0.0);
}

TEST_CASE("named operations") {
  QuantumOperation dep = gen_depolarizing(3, 1.0);
  PositiveOperator out = apply(dep, PositiveOperator::pure(ComplexVector::Unit(3, 0)));
  CHECK(max_abs(out.matrix() - ComplexMatrix::Identity(3, 3) / 3.0) < 1e-14);
  QuantumOperation z = gen_dephasing(2, 0.5);
  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  CHECK(std::abs(apply(z, PositiveOperator::from(plus)).matrix()(0, 1)) < 1e-15);
  CHECK(instance_kind_from_string("prepare-state") == InstanceKind::kPrepareState);
  CHECK(std::string(to_string(InstanceKind::kRandomOperation)) == "random-operation");
  CHECK_THROWS_AS(instance_kind_from_string("bogus"), InvalidInput);
}

TEST_CASE("Hamiltonian spacings") {
  RealVector lin = gen_hamiltonian(3, Spacing::kLinear).eigenvalues();
  RealVector har = gen_hamiltonian(3, Spacing::kHarmonic).eigenvalues();
  for (Index i = 0; i < 3; ++i) {
    CHECK(lin(i) == double(i));
    CHECK(har(i) == double(i) + 0.5);
  }
  Hamiltonian custom = gen_hamiltonian(3, Spacing::kCustom, {0.0, 0.5, 0.5});
  CHECK(custom.ground_energy() == 0.0);
  CHECK_THROWS_AS(gen_hamiltonian(3, Spacing::kCustom, {-1.0, 0.5, 0.5}), InvalidInput);
  CHECK_THROWS_AS(gen_hamiltonian(1, Spacing::kLinear), InvalidInput);
}

TEST_CASE("JSON round trips are byte identical") {
  QuantumOperation op = gen_random_operation(spec_for(InstanceKind::kRandomOperation, 2, 3, 2, 8));
  std::string once = dump(operation_to_json(op));
  CHECK(dump(operation_to_json(operation_from_json(Json::parse(once)))) == once);

  Hamiltonian h = gen_hamiltonian(3, Spacing::kLinear, {}, 4, true);
  std::string hs = dump(hamiltonian_to_json(h));
  CHECK(dump(hamiltonian_to_json(hamiltonian_from_json(Json::parse(hs)))) == hs);
  CHECK_FALSE(hamiltonian_to_json(gen_hamiltonian(2, Spacing::kLinear)).contains("basis"));

  ContinuationOptions opts;
  opts.pad = 1;
  SaddleCertificate c = solve_with_continuation(op, op, gen_hamiltonian(2, Spacing::kLinear), EnergyBound{0.5}, opts);
  std::string cs = dump(certificate_to_json(c));
  CHECK(dump(certificate_to_json(certificate_from_json(Json::parse(cs)))) == cs);
}

TEST_CASE("malformed JSON is invalid input") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), InvalidInput);
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1, 2, 3]")), InvalidInput);
  CHECK_THROWS_AS(operation_from_json(Json::parse(R"({"kind": "choi"})")), InvalidInput);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InvalidInput);
}

TEST_CASE("check status follows the declared direction") {
  CHECK(make_check(1, "a", 1.05, 1.0, 0.1, Direction::kAtMost).passed);
  CHECK_FALSE(make_check(1, "a", 1.2, 1.0, 0.1, Direction::kAtMost).passed);
  CHECK(make_check(1, "b", 27, 28, 1, Direction::kAtLeast).passed);
  CHECK_FALSE(make_check(1, "b", 26, 28, 1, Direction::kAtLeast).passed);
  CHECK_FALSE(make_check(1, "c", std::nan(""), 0, 1, Direction::kAtMost).passed);
}

TEST_CASE("sphere oracle never exceeds the E-norm") {
  Rng rng(3);
  Hamiltonian h = gen_hamiltonian(3, Spacing::kLinear);
  for (int t = 0; t < 3; ++t) {
    ComplexMatrix x = gaussian_matrix(rng, 3, 3);
    EnergyBound e{0.3 + rng.uniform()};
    double lib = enorm(x, h, e);
    double oracle = sphere_enorm_oracle(x, h, e, rng.next_u64(), 20000);
    CHECK(oracle <= lib + 1e-9);
    CHECK(lib - oracle < 1e-4);
  }
}

TEST_CASE("verification report is deterministic") {
  VerificationConfig cfg;
  cfg.trials = 4;
  cfg.seed = 5;
  std::string a = dump(report_to_json(run_verification_suite(cfg)));
  std::string b = dump(report_to_json(run_verification_suite(cfg)));
  CHECK(a == b);
  CHECK(Json::parse(a)["seed"] == 5);
  cfg.trials = 0;
  CHECK_THROWS_AS(run_verification_suite(cfg), InvalidInput);
}
