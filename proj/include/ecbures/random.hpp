#pragma once

// Seeded counter-based random numbers. Every draw is a pure function of
// (key, counter), so substreams derived from (seed, index) reproduce the same
// values regardless of evaluation order or thread count.

#include <cstdint>

#include "ecbures/linops.hpp"

namespace ecbures {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Key of the substream `index` of `seed`.
std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller; both variates of a pair are used.
  double normal();
  /// Real and imaginary parts independent N(0, 1/2).
  Complex complex_normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Entries i.i.d. complex_normal.
ComplexMatrix gaussian_matrix(Rng& rng, Index rows, Index cols);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix random_unitary(Rng& rng, Index dim);
/// rows x cols isometry (rows >= cols), the first columns of a Haar unitary.
ComplexMatrix random_isometry(Rng& rng, Index rows, Index cols);
ComplexVector random_unit_vector(Rng& rng, Index dim);
/// Induced-measure state of the given rank (Gaussian G, rho = G G^dagger / Tr).
PositiveOperator random_state(Rng& rng, Index dim, Index rank);
/// Random positive operator of the given rank scaled to the given trace.
PositiveOperator random_psd(Rng& rng, Index dim, Index rank, double trace);
/// Gaussian matrix scaled to operator norm uniform in [0, 1].
ComplexMatrix random_contraction(Rng& rng, Index rows, Index cols);
RealVector random_hermitian_spectrum(Rng& rng, Index dim, double lo, double hi);
HermitianOperator random_hermitian(Rng& rng, Index dim);

}  // namespace ecbures
