#include "ecbures/enorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace ecbures {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Eigenvalues this close (relative) to the top one span the top eigenspace.
constexpr double kTopSpaceTol = 1e-12;
constexpr int kMaxBisections = 200;

// Top eigenspace of a Hermitian matrix together with its extreme-energy
// vectors: the two legs of the two-level construction.
struct TopSpace {
  double top = 0.0;
  ComplexVector low_leg;
  double low_energy = 0.0;
  ComplexVector high_leg;
  double high_energy = 0.0;
};

TopSpace top_space(const ComplexMatrix& shifted, const ComplexMatrix& hm) {
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(shifted));
  const RealVector& vals = ed.eigenvalues;
  double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  Index count = 1;
  while (count < vals.size() && vals(0) - vals(count) <= kTopSpaceTol * scale) ++count;

  TopSpace out;
  out.top = vals(0);
  if (count == 1) {
    out.low_leg = out.high_leg = ed.eigenvectors.col(0);
    out.low_energy = out.high_energy = (out.low_leg.adjoint() * hm * out.low_leg)(0).real();
    return out;
  }
  ComplexMatrix q = ed.eigenvectors.leftCols(count);
  EigenDecomposition hs = eigh(HermitianOperator::unchecked(q.adjoint() * hm * q));
  out.high_leg = q * hs.eigenvectors.col(0);
  out.high_energy = hs.eigenvalues(0);
  out.low_leg = q * hs.eigenvectors.col(count - 1);
  out.low_energy = hs.eigenvalues(count - 1);
  return out;
}

double expectation(const ComplexMatrix& m, const ComplexVector& v) {
  return (v.adjoint() * m * v)(0).real();
}

// Bloch components of a 2x2 Hermitian matrix: A = a0 I + a . sigma.
struct Bloch {
  double a0;
  Eigen::Vector3d a;
};

Bloch bloch(const ComplexMatrix& m) {
  return {0.5 * (m(0, 0).real() + m(1, 1).real()),
          Eigen::Vector3d(m(1, 0).real(), m(1, 0).imag(), 0.5 * (m(0, 0).real() - m(1, 1).real()))};
}

ComplexVector state_from_bloch(const Eigen::Vector3d& r) {
  Eigen::Vector3d n = r.normalized();
  double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  double chi = std::atan2(n.y(), n.x());
  ComplexVector v(2);
  v(0) = std::cos(theta / 2);
  v(1) = std::polar(std::sin(theta / 2), chi);
  return v;
}

// Maximizes <v|M|v> over unit vectors of a two-dimensional space subject to
// <v|H|v> <= E. Over the Bloch ball cut by a half-space the maximum of a linear
// functional sits on the sphere, i.e. at a pure state.
ComplexVector two_level_pure(const ComplexMatrix& m2, const ComplexMatrix& h2, double e) {
  Bloch bm = bloch(m2);
  Bloch bh = bloch(h2);
  double budget = e - bh.a0;  // need bh.a . r <= budget
  Eigen::Vector3d dir = bm.a.norm() > 0 ? Eigen::Vector3d(bm.a.normalized()) : Eigen::Vector3d::UnitZ();
  if (bh.a.dot(dir) <= budget) return state_from_bloch(dir);
  double hn = bh.a.norm();
  Eigen::Vector3d hhat = bh.a / hn;
  double c = std::clamp(budget / hn, -1.0, 1.0);
  Eigen::Vector3d perp = bm.a - bm.a.dot(hhat) * hhat;
  if (perp.norm() <= 1e-300) {
    // M aligned with H: any direction on the circle; pick one orthogonal to hhat.
    perp = hhat.unitOrthogonal();
  }
  Eigen::Vector3d r = c * hhat + std::sqrt(std::max(0.0, 1.0 - c * c)) * perp.normalized();
  return state_from_bloch(r);
}

}  // namespace

Hamiltonian::Hamiltonian(RealVector eigenvalues, ComplexMatrix basis, bool computational)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)), computational_(computational) {
  matrix_ = basis_ * eigenvalues_.cast<Complex>().asDiagonal() * basis_.adjoint();
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
}

Hamiltonian Hamiltonian::from_spectrum(const RealVector& eigenvalues, const ComplexMatrix& basis) {
  const Index n = eigenvalues.size();
  if (n < 1) throw InvalidInput("Hamiltonian: empty spectrum");
  if (!eigenvalues.allFinite()) throw InvalidInput("Hamiltonian: non-finite eigenvalue");
  if (basis.rows() != n || basis.cols() != n) throw InvalidInput("Hamiltonian: basis shape mismatch");
  require_finite(basis, "Hamiltonian basis");
  if (eigenvalues.minCoeff() < 0.0) throw InvalidInput("Hamiltonian: negative eigenvalue");
  if (max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(n, n)) > 1e-12) {
    throw InvalidInput("Hamiltonian: basis is not orthonormal");
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return eigenvalues(a) < eigenvalues(b); });
  RealVector vals(n);
  ComplexMatrix cols(n, n);
  for (Index i = 0; i < n; ++i) {
    vals(i) = eigenvalues(order[std::size_t(i)]);
    cols.col(i) = basis.col(order[std::size_t(i)]);
  }
  bool computational = max_abs(cols - ComplexMatrix::Identity(n, n)) == 0.0;
  return Hamiltonian(std::move(vals), std::move(cols), computational);
}

Hamiltonian Hamiltonian::diagonal(const RealVector& eigenvalues) {
  const Index n = eigenvalues.size();
  return from_spectrum(eigenvalues, ComplexMatrix::Identity(n, n));
}

void require_energy_above_ground(const Hamiltonian& h, EnergyBound e) {
  if (!std::isfinite(e.value) || !(e.value > h.ground_energy())) {
    throw InvalidInput("energy bound " + std::to_string(e.value) +
                       " must exceed the ground energy " + std::to_string(h.ground_energy()));
  }
}

ConstrainedOptimum max_linear_over_energy_ball(const HermitianOperator& m, const Hamiltonian& h,
                                               EnergyBound e) {
  if (m.dim() != h.dim()) throw InvalidInput("max_linear_over_energy_ball: dimension mismatch");
  require_energy_above_ground(h, e);
  const ComplexMatrix& mm = m.matrix();
  const ComplexMatrix& hm = h.matrix();
  const double energy = e.value;
  auto dual = [&](double lambda, const TopSpace& t) { return lambda * energy + t.top; };

  TopSpace at_zero = top_space(mm, hm);
  if (at_zero.low_energy <= energy) {
    PositiveOperator rho = PositiveOperator::pure(at_zero.low_leg);
    double primal = expectation(mm, at_zero.low_leg);
    return {at_zero.top, primal, 0.0, std::move(rho), false, std::nullopt};
  }

  EigenDecomposition spec = eigh(m);
  const Index n = m.dim();
  double width = spec.eigenvalues(0) - spec.eigenvalues(n - 1);
  double lo = 0.0;
  double hi = width / (energy - h.ground_energy()) + 1.0;
  TopSpace t_lo = at_zero;
  TopSpace t_hi = top_space(mm - hi * hm, hm);
  if (t_hi.low_energy > energy) {
    throw NumericalFailure("max_linear_over_energy_ball: dual bracket does not contain the minimizer");
  }
  if (t_hi.high_energy >= energy) t_lo = t_hi, lo = hi;

  for (int it = 0; it < kMaxBisections && hi - lo > 4 * kEps * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    TopSpace t = top_space(mm - mid * hm, hm);
    if (t.low_energy > energy) {
      lo = mid, t_lo = t;
    } else if (t.high_energy < energy) {
      hi = mid, t_hi = t;
    } else {
      // Zero is a subgradient: mid is optimal and its top space holds both legs.
      lo = hi = mid;
      t_lo = t_hi = t;
      break;
    }
  }

  const ComplexVector& high = t_lo.high_leg;
  const ComplexVector& low = t_hi.low_leg;
  double e_high = expectation(hm, high);
  double e_low = expectation(hm, low);
  double t = e_high - e_low > 0.0 ? std::clamp((energy - e_low) / (e_high - e_low), 0.0, 1.0) : 0.0;
  ComplexMatrix rho = t * high * high.adjoint() + (1.0 - t) * low * low.adjoint();
  double primal = t * expectation(mm, high) + (1.0 - t) * expectation(mm, low);
  double value = std::min(dual(lo, t_lo), dual(hi, t_hi));
  if (value - primal > 1e-9 * (1.0 + std::abs(primal))) {
    throw NumericalFailure("max_linear_over_energy_ball: duality gap " +
                           std::to_string(value - primal) + " exceeds tolerance");
  }
  value = std::max(value, primal);
  return {value, primal, 0.5 * (lo + hi), PositiveOperator::unchecked(rho), true, std::nullopt};
}

double enorm(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e) {
  if (x.cols() != h.dim()) throw InvalidInput("enorm: operator does not act on the Hamiltonian space");
  ConstrainedOptimum opt =
      max_linear_over_energy_ball(HermitianOperator::unchecked(x.adjoint() * x), h, e);
  return std::sqrt(std::max(opt.value, 0.0));
}

double enorm_smoothed(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e,
                      const SmoothingParams& sp) {
  if (sp.sigma().dim() != h.dim()) throw InvalidInput("enorm_smoothed: reference state dimension");
  double base = enorm(x, h, e);
  double sigma_term = (x * sp.sigma().matrix() * x.adjoint()).trace().real();
  double sq = (1.0 - sp.p()) * base * base + sp.p() * sigma_term;
  return std::sqrt(std::max(sq, 0.0));
}

ComplexVector pure_witness_refine(const ConstrainedOptimum& opt, const HermitianOperator& m,
                                  const Hamiltonian& h, EnergyBound e) {
  const ComplexMatrix& mm = m.matrix();
  const ComplexMatrix& hm = h.matrix();
  const double energy = e.value;
  EigenDecomposition ed = eigh(opt.rho_star.hermitian());
  auto good = [&](const ComplexVector& v) {
    return expectation(hm, v) <= energy + kEnergyTol && expectation(mm, v) >= opt.value - 1e-7;
  };

  ComplexVector best = ed.eigenvectors.col(0);
  if (h.dim() >= 2 && ed.eigenvalues(1) > 0.0) {
    ComplexMatrix q = ed.eigenvectors.leftCols(2);
    ComplexVector local = two_level_pure(q.adjoint() * mm * q, q.adjoint() * hm * q, energy);
    best = (q * local).normalized();
  }
  if (good(best)) return best;

  // Projected local ascent on the sphere, pulled back into the energy ball by
  // the damping phi -> (I + nu H)^{-1} phi.
  double step = 0.1;
  double best_val = expectation(hm, best) <= energy + kEnergyTol ? expectation(mm, best) : -1e300;
  ComplexVector cur = best;
  for (int it = 0; it < 2000 && step > 1e-14; ++it) {
    ComplexVector grad = mm * cur - expectation(mm, cur) * cur;
    ComplexVector trial = (cur + step * grad).normalized();
    if (expectation(hm, trial) > energy) {
      double nlo = 0.0, nhi = 1.0;
      auto damp = [&](double nu) {
        ComplexMatrix a = ComplexMatrix::Identity(h.dim(), h.dim()) + nu * hm;
        return ComplexVector(a.ldlt().solve(trial).normalized());
      };
      while (expectation(hm, damp(nhi)) > energy && nhi < 1e12) nhi *= 2;
      for (int k = 0; k < 100; ++k) {
        double mid = 0.5 * (nlo + nhi);
        (expectation(hm, damp(mid)) > energy ? nlo : nhi) = mid;
      }
      trial = damp(nhi);
    }
    double val = expectation(mm, trial);
    if (val > best_val) {
      best_val = val, cur = trial, best = trial;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
    if (good(best)) return best;
  }
  throw NumericalFailure("pure_witness_refine: no pure state reaches the optimal value");
}

}  // namespace ecbures
