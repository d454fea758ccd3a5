#pragma once

// The acceptance suite: property and oracle checks over seeded random
// instances, collected into a deterministic report.

#include <cstdint>
#include <string>
#include <vector>

#include "ecbures/linops.hpp"
#include "ecbures/serialization.hpp"

namespace ecbures {

struct VerificationConfig {
  std::uint64_t seed = 1;
  int trials = 30;  // channel pairs in the main sandwich batch
  Index d_a = 2;
  Index d_b = 2;
  Index kraus_count = 2;
  Index pad = 2;
  double tol = 1e-4;
};

enum class Direction { kAtMost, kAtLeast };

struct CheckRecord {
  int criterion;
  std::string name;
  bool passed;
  double measured;
  double bound;
  double tolerance;
  Direction direction;
  std::string note;  // error text when a check threw
};

/// passed iff measured <= bound + tolerance (kAtMost) or
/// measured >= bound - tolerance (kAtLeast).
CheckRecord make_check(int criterion, std::string name, double measured, double bound,
                       double tolerance, Direction direction);

struct Report {
  VerificationConfig config;
  std::vector<CheckRecord> checks;
  std::vector<double> seconds;  // wall time per criterion, index 0 unused; not serialized

  int passed() const;
  int failed() const;
  bool criterion_passed(int criterion) const;
};

/// Runs the ten acceptance criteria. Exceptions inside a criterion become a
/// failed check carrying the message.
Report run_verification_suite(const VerificationConfig& config);

/// Same config and seed give byte-identical output.
Json report_to_json(const Report& report);
std::string report_text(const Report& report);

const char* criterion_title(int criterion);

/// max ||X phi|| over `samples` random unit vectors with <phi|H|phi> <= E,
/// followed by random-direction hill climbing from the best sample.
double sphere_enorm_oracle(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e,
                           std::uint64_t seed, int samples);

}  // namespace ecbures
