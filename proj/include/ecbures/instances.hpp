#pragma once

// Seeded generators for operations and Hamiltonians.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecbures/enorm.hpp"
#include "ecbures/quantum.hpp"

namespace ecbures {

enum class InstanceKind {
  kRandomChannel,
  kRandomOperation,
  kDephasing,
  kDepolarizing,
  kPrepareState,
  kFromFile,
};

const char* to_string(InstanceKind kind);
/// Throws InvalidInput for unknown names.
InstanceKind instance_kind_from_string(const std::string& name);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::kRandomChannel;
  Index d_a = 2;
  Index d_b = 2;
  Index kraus_count = 2;
  std::uint64_t seed = 0;
  double strength = 1.0;  // dephasing / depolarizing parameter in [0, 1]
  std::string path;       // kFromFile
};

/// Kraus blocks of an orthonormalized seeded Gaussian (d_b * k) x d_a matrix.
QuantumOperation gen_random_channel(const InstanceSpec& spec);

/// A random channel composed with a seeded diagonal contraction on the input
/// (entries uniform in [0, 1)).
QuantumOperation gen_random_operation(const InstanceSpec& spec);
/// As above with the given diagonal.
QuantumOperation gen_random_operation(const InstanceSpec& spec, const RealVector& contraction);

/// rho -> (1 - q) rho + q Z rho Z^dagger with Z = diag(1, w, w^2, ...),
/// w = exp(2 pi i / d). q = 1 on a qubit is conjugation by Pauli Z.
QuantumOperation gen_dephasing(Index dim, double strength);

/// rho -> (1 - q) rho + q Tr(rho) I / d.
QuantumOperation gen_depolarizing(Index dim, double strength);

/// rho -> Tr(rho) |state><state|.
QuantumOperation gen_prepare_state(Index d_in, const ComplexVector& state);
/// Prepares a seeded random pure state on d_b.
QuantumOperation gen_prepare_state(const InstanceSpec& spec);

/// Dispatches on spec.kind.
QuantumOperation make_operation(const InstanceSpec& spec);

enum class Spacing { kLinear, kHarmonic, kCustom };

/// linear: 0, 1, ..., d - 1; harmonic: 1/2, 3/2, ...; custom: the given list.
/// With random_basis the eigenbasis is a Haar unitary drawn from seed,
/// otherwise the computational basis.
Hamiltonian gen_hamiltonian(Index dim, Spacing spacing, const std::vector<double>& custom = {},
                            std::uint64_t seed = 0, bool random_basis = false);

}  // namespace ecbures
