#include "ecbures/instances.hpp"

#include <cmath>
#include <numbers>

#include "ecbures/random.hpp"
#include "ecbures/serialization.hpp"

namespace ecbures {

namespace {

struct KindName {
  InstanceKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {InstanceKind::kRandomChannel, "random-channel"},
    {InstanceKind::kRandomOperation, "random-operation"},
    {InstanceKind::kDephasing, "dephasing"},
    {InstanceKind::kDepolarizing, "depolarizing"},
    {InstanceKind::kPrepareState, "prepare-state"},
    {InstanceKind::kFromFile, "from-file"},
};

void check_dims(const InstanceSpec& spec) {
  if (spec.d_a < 1 || spec.d_b < 1 || spec.kraus_count < 1) {
    throw InvalidInput("instance dimensions and Kraus count must be positive");
  }
  if (spec.kraus_count * spec.d_b < spec.d_a) {
    throw InvalidInput("kraus_count * d_b must be at least d_a");
  }
}

void check_strength(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("strength must lie in [0, 1]");
}

}  // namespace

const char* to_string(InstanceKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw InvalidInput("unknown instance kind '" + name + "'");
}

QuantumOperation gen_random_channel(const InstanceSpec& spec) {
  check_dims(spec);
  Rng rng(spec.seed);
  ComplexMatrix v = random_isometry(rng, spec.d_b * spec.kraus_count, spec.d_a);
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < spec.kraus_count; ++k) kraus.push_back(v.middleRows(k * spec.d_b, spec.d_b));
  return QuantumOperation::from_kraus(spec.d_a, spec.d_b, std::move(kraus));
}

QuantumOperation gen_random_operation(const InstanceSpec& spec) {
  check_dims(spec);
  Rng rng(substream(spec.seed, 1));
  RealVector diag(spec.d_a);
  for (Index i = 0; i < spec.d_a; ++i) diag(i) = rng.uniform();
  return gen_random_operation(spec, diag);
}

QuantumOperation gen_random_operation(const InstanceSpec& spec, const RealVector& contraction) {
  if (contraction.size() != spec.d_a) throw InvalidInput("contraction has the wrong length");
  if ((contraction.array() < 0.0).any() || (contraction.array() > 1.0).any()) {
    throw InvalidInput("contraction entries must lie in [0, 1]");
  }
  QuantumOperation channel = gen_random_channel(spec);
  ComplexMatrix d = contraction.cast<Complex>().asDiagonal();
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : channel.kraus()) kraus.push_back(k * d);
  return QuantumOperation::from_kraus(spec.d_a, spec.d_b, std::move(kraus));
}

QuantumOperation gen_dephasing(Index dim, double strength) {
  check_strength(strength);
  if (dim < 2) throw InvalidInput("dephasing needs dimension at least 2");
  ComplexMatrix z = ComplexMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(dim));
  if (dim == 2) z(1, 1) = -1.0;
  std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - strength) * ComplexMatrix::Identity(dim, dim),
                                   std::sqrt(strength) * z};
  return QuantumOperation::from_kraus(dim, dim, std::move(kraus));
}

QuantumOperation gen_depolarizing(Index dim, double strength) {
  check_strength(strength);
  if (dim < 1) throw InvalidInput("dimension must be positive");
  // Weyl operators X^a Z^b form a unitary error basis; their uniform twirl is
  // the completely depolarizing channel.
  ComplexMatrix x = ComplexMatrix::Zero(dim, dim), z = ComplexMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    x((j + 1) % dim, j) = 1.0;
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(dim));
  }
  const double d2 = double(dim * dim);
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix xa = ComplexMatrix::Identity(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    ComplexMatrix w = xa;
    for (Index b = 0; b < dim; ++b) {
      double weight = (a == 0 && b == 0) ? 1.0 - strength + strength / d2 : strength / d2;
      kraus.push_back(std::sqrt(weight) * w);
      w = w * z;
    }
    xa = x * xa;
  }
  return QuantumOperation::from_kraus(dim, dim, std::move(kraus));
}

QuantumOperation gen_prepare_state(Index d_in, const ComplexVector& state) {
  if (d_in < 1 || state.size() < 1) throw InvalidInput("dimensions must be positive");
  double n = state.norm();
  if (std::abs(n - 1.0) > 1e-12) throw InvalidInput("prepared state must be a unit vector");
  std::vector<ComplexMatrix> kraus;
  for (Index m = 0; m < d_in; ++m) {
    ComplexMatrix k = ComplexMatrix::Zero(state.size(), d_in);
    k.col(m) = state;
    kraus.push_back(std::move(k));
  }
  return QuantumOperation::from_kraus(d_in, state.size(), std::move(kraus));
}

QuantumOperation gen_prepare_state(const InstanceSpec& spec) {
  if (spec.d_a < 1 || spec.d_b < 1) throw InvalidInput("dimensions must be positive");
  Rng rng(spec.seed);
  return gen_prepare_state(spec.d_a, random_unit_vector(rng, spec.d_b));
}

QuantumOperation make_operation(const InstanceSpec& spec) {
  switch (spec.kind) {
    case InstanceKind::kRandomChannel:
      return gen_random_channel(spec);
    case InstanceKind::kRandomOperation:
      return gen_random_operation(spec);
    case InstanceKind::kDephasing:
      return gen_dephasing(spec.d_a, spec.strength);
    case InstanceKind::kDepolarizing:
      return gen_depolarizing(spec.d_a, spec.strength);
    case InstanceKind::kPrepareState:
      return gen_prepare_state(spec);
    case InstanceKind::kFromFile:
      return operation_from_json(read_json_file(spec.path));
  }
  throw InvalidInput("unknown instance kind");
}

Hamiltonian gen_hamiltonian(Index dim, Spacing spacing, const std::vector<double>& custom,
                            std::uint64_t seed, bool random_basis) {
  if (dim < 2) throw InvalidInput("gen_hamiltonian: dimension must be at least 2");
  RealVector ev(dim);
  switch (spacing) {
    case Spacing::kLinear:
      for (Index i = 0; i < dim; ++i) ev(i) = double(i);
      break;
    case Spacing::kHarmonic:
      for (Index i = 0; i < dim; ++i) ev(i) = double(i) + 0.5;
      break;
    case Spacing::kCustom:
      if (Index(custom.size()) != dim) throw InvalidInput("gen_hamiltonian: custom spectrum has the wrong length");
      for (Index i = 0; i < dim; ++i) ev(i) = custom[std::size_t(i)];
      if ((ev.array() < 0.0).any()) throw InvalidInput("gen_hamiltonian: negative custom eigenvalue");
      break;
  }
  if (!random_basis) return Hamiltonian::diagonal(ev);
  Rng rng(seed);
  return Hamiltonian::from_spectrum(ev, random_unitary(rng, dim));
}

}  // namespace ecbures
