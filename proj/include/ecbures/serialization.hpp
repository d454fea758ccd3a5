#pragma once

// JSON schema shared by the CLI and the verification reports.
//
//   complex      [re, im]
//   matrix       row-major nested arrays of complex
//   operation    {"kind": "kraus", "d_in", "d_out", "kraus": [matrix, ...]}
//   hamiltonian  {"eigenvalues": [...], "basis": matrix (optional)}
//
// Doubles are written in shortest round-trip form.

#include <string>

#include "json.hpp"

#include "ecbures/enorm.hpp"
#include "ecbures/ksw.hpp"
#include "ecbures/quantum.hpp"

namespace ecbures {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json operation_to_json(const QuantumOperation& op);
QuantumOperation operation_from_json(const Json& j);

Json hamiltonian_to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const Json& j);

/// A positive operator as a bare matrix, or {"matrix": ...}.
PositiveOperator state_from_json(const Json& j);

Json stage_to_json(const StageRecord& s);
StageRecord stage_from_json(const Json& j);

Json certificate_to_json(const SaddleCertificate& c);
SaddleCertificate certificate_from_json(const Json& j);

/// Throws InvalidInput on I/O or parse errors.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace ecbures
