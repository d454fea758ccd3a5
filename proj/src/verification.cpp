#include "ecbures/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ecbures/fidelity.hpp"
#include "ecbures/instances.hpp"
#include "ecbures/ksw.hpp"
#include "ecbures/random.hpp"

namespace ecbures {

namespace {

const char* kTitles[] = {
    "",
    "Uhlmann equality and alignment condition",
    "E-norm against analytic and sphere-sampling oracles",
    "E-norm monotonicity, concavity and energy scaling",
    "Bures distance versus trace distance",
    "sandwich closure on random channel pairs",
    "dephasing benchmark 2 sqrt(E)",
    "sandwich closure for trace-decreasing operations",
    "smoothing bounds along continuation traces",
    "output support containment",
    "padding monotonicity",
};

std::uint64_t trial_seed(const VerificationConfig& cfg, int criterion, int trial) {
  return substream(substream(cfg.seed, std::uint64_t(criterion)), std::uint64_t(trial));
}

// Spectrum with E_0 = 0 and the remaining levels uniform in (0, 2], in a Haar
// random eigenbasis.
Hamiltonian random_hamiltonian(Rng& rng, Index d) {
  std::vector<double> ev(std::size_t(d), 0.0);
  for (Index i = 1; i < d; ++i) ev[std::size_t(i)] = 2.0 * (1.0 - rng.uniform());
  std::sort(ev.begin(), ev.end());
  return gen_hamiltonian(d, Spacing::kCustom, ev, rng.next_u64(), true);
}

Hamiltonian linear_hamiltonian(Index d) { return gen_hamiltonian(d, Spacing::kLinear); }

InstanceSpec spec_of(InstanceKind kind, Index d_a, Index d_b, Index k, std::uint64_t seed) {
  InstanceSpec spec;
  spec.kind = kind;
  spec.d_a = d_a;
  spec.d_b = d_b;
  spec.kraus_count = k;
  spec.seed = seed;
  return spec;
}

double energy_fraction(Rng& rng, Index d) { return (0.1 + 0.8 * rng.uniform()) * double(d - 1); }

// All d eigen-directions, so purifications of different states share H_R.
// Eigenvalues at rounding level are the exact zeros of a rank-deficient draw.
ComplexVector full_purification(const PositiveOperator& rho) {
  EigenDecomposition ed = eigh(rho.hermitian());
  const Index d = rho.dim();
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    double lambda = ed.eigenvalues(i);
    double w = lambda > kDefaultRankTol * ed.eigenvalues(0) ? std::sqrt(lambda) : 0.0;
    for (Index a = 0; a < d; ++a) v(a * d + i) = w * ed.eigenvectors(a, i);
  }
  return v;
}

struct Collector {
  Report& report;
  std::vector<SaddleCertificate> traces;

  void add(int c, std::string name, double measured, double bound, double tol, Direction dir) {
    report.checks.push_back(make_check(c, std::move(name), measured, bound, tol, dir));
  }
};

void criterion1(const VerificationConfig& cfg, Collector& out) {
  double worst = 0.0, worst_residual = 0.0;
  for (int t = 0; t < 200; ++t) {
    Rng rng(trial_seed(cfg, 1, t));
    Index d = 2 + t % 5;
    Index rank_rho = 1 + Index(rng.next_u64() % std::uint64_t(d));
    bool full_sigma = t % 2 == 0;
    Index rank_sigma = full_sigma ? d : 1 + Index(rng.next_u64() % std::uint64_t(d));
    PositiveOperator rho = random_state(rng, d, rank_rho);
    PositiveOperator sigma = random_state(rng, d, rank_sigma);
    ComplexVector phi = full_purification(rho);
    ComplexVector psi = full_purification(sigma);
    AlignmentResult al = align_purifications(phi, psi, d, d);
    worst = std::max(worst, std::abs(fidelity(rho, sigma) - al.fidelity_value));
    if (full_sigma) {
      ComplexMatrix lift = kron(ComplexMatrix::Identity(d, d), al.u0.adjoint() * al.u0);
      worst_residual = std::max(worst_residual, (lift * phi - phi).norm());
    }
  }
  out.add(1, "fidelity_vs_aligned_overlap", worst, 0.0, 1e-9, Direction::kAtMost);
  out.add(1, "alignment_condition_residual", worst_residual, 0.0, 1e-8, Direction::kAtMost);
}

void criterion2(const VerificationConfig& cfg, Collector& out) {
  Hamiltonian h = Hamiltonian::diagonal(RealVector::LinSpaced(2, 0.0, 1.0));
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(1, 1) = 1.0;
  double analytic = 0.0;
  for (double e : {0.1, 0.25, 0.5, 2.0}) {
    analytic = std::max(analytic, std::abs(enorm(x, h, EnergyBound{e}) - std::sqrt(std::min(e, 1.0))));
  }
  out.add(2, "analytic_projector", analytic, 0.0, 1e-9, Direction::kAtMost);

  double above = 0.0, below = 0.0;
  for (int t = 0; t < 10; ++t) {
    Rng rng(trial_seed(cfg, 2, t));
    Index d = t < 5 ? 2 : 3;
    Hamiltonian hr = random_hamiltonian(rng, d);
    EnergyBound e{1.1 * hr.top_energy() * (0.05 + 0.95 * rng.uniform())};
    ComplexMatrix xr = gaussian_matrix(rng, d, d);
    double lib = enorm(xr, hr, e);
    double oracle = sphere_enorm_oracle(xr, hr, e, rng.next_u64(), 100000);
    above = std::max(above, lib - oracle);
    below = std::max(below, oracle - lib);
  }
  out.add(2, "library_minus_sphere_oracle", above, 0.0, 1e-5, Direction::kAtMost);
  out.add(2, "sphere_oracle_minus_library", below, 0.0, 1e-9, Direction::kAtMost);
}

void criterion3(const VerificationConfig& cfg, Collector& out) {
  double mono = 0.0, concave = 0.0, scaling_low = 0.0, scaling_high = 0.0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(trial_seed(cfg, 3, t));
    Index d = 2 + t % 3;
    Hamiltonian h = random_hamiltonian(rng, d);
    ComplexMatrix x = gaussian_matrix(rng, d + t % 2, d);
    double span = 1.2 * h.top_energy();
    double a = h.ground_energy() + span * (0.01 + 0.99 * rng.uniform());
    double b = h.ground_energy() + span * (0.01 + 0.99 * rng.uniform());
    double e1 = std::min(a, b), e2 = std::max(a, b);
    if (e2 - e1 < 1e-6) e2 = e1 + 1e-3;
    double n1 = enorm(x, h, EnergyBound{e1});
    double n2 = enorm(x, h, EnergyBound{e2});
    double nm = enorm(x, h, EnergyBound{0.5 * (e1 + e2)});
    mono = std::max(mono, n1 - n2);
    concave = std::max(concave, 0.5 * (n1 * n1 + n2 * n2) - nm * nm);
    double ratio = std::sqrt((e2 - h.ground_energy()) / (e1 - h.ground_energy()));
    scaling_low = std::max(scaling_low, n1 - n2);
    scaling_high = std::max(scaling_high, n2 - ratio * n1);
  }
  out.add(3, "monotonicity_violation", mono, 0.0, 1e-9, Direction::kAtMost);
  out.add(3, "midpoint_concavity_violation", concave, 0.0, 1e-9, Direction::kAtMost);
  out.add(3, "energy_scaling_lower_violation", scaling_low, 0.0, 1e-9, Direction::kAtMost);
  out.add(3, "energy_scaling_upper_violation", scaling_high, 0.0, 1e-9, Direction::kAtMost);
}

void criterion4(const VerificationConfig& cfg, Collector& out) {
  double left = 0.0, right = 0.0;
  for (int t = 0; t < 500; ++t) {
    Rng rng(trial_seed(cfg, 4, t));
    Index d = 2 + t % 4;
    auto draw = [&]() {
      Index r = 1 + Index(rng.next_u64() % std::uint64_t(d));
      double tr = t % 2 == 0 ? 1.0 : 1.0 - rng.uniform();
      return random_psd(rng, d, r, tr);
    };
    PositiveOperator rho = draw();
    PositiveOperator sigma = draw();
    double b = bures_distance(rho, sigma);
    double dist = trace_norm(rho.matrix() - sigma.matrix());
    left = std::max(left, dist / (std::sqrt(rho.trace()) + std::sqrt(sigma.trace())) - b);
    right = std::max(right, b - std::sqrt(dist));
  }
  out.add(4, "trace_distance_lower_violation", left, 0.0, 1e-9, Direction::kAtMost);
  out.add(4, "trace_distance_upper_violation", right, 0.0, 1e-9, Direction::kAtMost);
}

struct SandwichBatch {
  int converged = 0;
  double worst_validity = -1.0;  // max lower - upper
};

SandwichBatch channel_batch(const VerificationConfig& cfg, int criterion, int first, int count,
                            Index d_a, Index d_b, Index k, Index pad, Collector& out,
                            bool operations) {
  SandwichBatch b;
  for (int t = first; t < first + count; ++t) {
    std::uint64_t seed = trial_seed(cfg, criterion, t);
    Rng rng(seed);
    InstanceSpec spec = spec_of(operations ? InstanceKind::kRandomOperation : InstanceKind::kRandomChannel,
                      d_a, d_b, k, substream(seed, 1));
    QuantumOperation phi = make_operation(spec);
    spec.seed = substream(seed, 2);
    QuantumOperation psi = make_operation(spec);
    Hamiltonian h = linear_hamiltonian(d_a);
    EnergyBound e{energy_fraction(rng, d_a)};
    ContinuationOptions opts;
    opts.pad = pad;
    opts.saddle.tol = cfg.tol;
    SaddleCertificate c = solve_with_continuation(phi, psi, h, e, opts);
    if (c.gap <= (operations ? 1e-3 : cfg.tol)) ++b.converged;
    b.worst_validity = std::max(b.worst_validity, c.lower_bound - c.upper_bound);
    out.traces.push_back(std::move(c));
  }
  return b;
}

void criterion5(const VerificationConfig& cfg, Collector& out) {
  SandwichBatch main = channel_batch(cfg, 5, 0, cfg.trials, cfg.d_a, cfg.d_b, cfg.kraus_count,
                                     cfg.pad, out, false);
  SandwichBatch big = channel_batch(cfg, 5, 1000, 10, 3, 3, 2, 2, out, false);
  int need = cfg.trials - cfg.trials / 15;
  out.add(5, "closed_main_batch", main.converged, need, 0.0, Direction::kAtLeast);
  out.add(5, "closed_qutrit_batch", big.converged, 9, 0.0, Direction::kAtLeast);
  out.add(5, "sandwich_validity", std::max(main.worst_validity, big.worst_validity), 0.0, 1e-8,
          Direction::kAtMost);
}

// Brute force over random pure states on A (x) R (d_R = 2) with the excited
// amplitudes damped onto the energy surface when infeasible. For id versus
// conjugation by Z the extended outputs are pure, with fidelity
// |<omega| Z (x) I |omega>|^2.
double dephasing_brute_force(double e, std::uint64_t seed, int samples) {
  Rng rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexVector w = random_unit_vector(rng, 4);
    double excited = std::norm(w(2)) + std::norm(w(3));
    if (excited > e) {
      double ground = 1.0 - excited;
      double scale = std::sqrt(e / excited);
      double gscale = std::sqrt((1.0 - e) / std::max(ground, 1e-300));
      w(0) *= gscale;
      w(1) *= gscale;
      w(2) *= scale;
      w(3) *= scale;
      if (ground <= 0.0) continue;
    }
    double overlap = std::norm(w(0)) + std::norm(w(1)) - std::norm(w(2)) - std::norm(w(3));
    best = std::max(best, std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(overlap))));
  }
  return best;
}

void criterion6(const VerificationConfig& cfg, Collector& out) {
  Hamiltonian h = Hamiltonian::diagonal(RealVector::LinSpaced(2, 0.0, 1.0));
  QuantumOperation id = QuantumOperation::identity(2);
  QuantumOperation z = gen_dephasing(2, 1.0);
  double ksw = 0.0, direct = 0.0, brute = 0.0;
  int t = 0;
  for (double e : {0.04, 0.16, 0.25}) {
    double exact = 2.0 * std::sqrt(e);
    ContinuationOptions opts;
    opts.saddle.tol = 0.1 * cfg.tol;
    SaddleCertificate c = solve_with_continuation(id, z, h, EnergyBound{e}, opts);
    ksw = std::max({ksw, std::abs(c.lower_bound - exact), std::abs(c.upper_bound - exact)});
    out.traces.push_back(std::move(c));
    direct = std::max(direct, std::abs(direct_ecbures(id, z, h, EnergyBound{e}, 8,
                                                      trial_seed(cfg, 6, t)) - exact));
    brute = std::max(brute, std::abs(dephasing_brute_force(e, trial_seed(cfg, 6, 100 + t), 1000000) -
                                     exact));
    ++t;
  }
  out.add(6, "ksw_bounds_error", ksw, 0.0, 1e-4, Direction::kAtMost);
  out.add(6, "direct_estimate_error", direct, 0.0, 1e-4, Direction::kAtMost);
  out.add(6, "brute_force_oracle_error", brute, 0.0, 1e-3, Direction::kAtMost);
}

void criterion7(const VerificationConfig& cfg, Collector& out) {
  std::size_t first = out.traces.size();
  SandwichBatch b = channel_batch(cfg, 7, 0, 10, 2, 2, 2, 2, out, true);
  double membership = 0.0;
  int partial_isometries = 0;
  for (std::size_t i = first; i < out.traces.size(); ++i) {
    const SaddleCertificate& c = out.traces[i];
    ComplexMatrix uu = c.u.adjoint() * c.u;
    membership = std::max(membership, max_abs(uu * uu - uu));
    ContractionClass cls = classify_contraction(c.u, 1e-7);
    if (cls == ContractionClass::kPartialIsometry || cls == ContractionClass::kIsometry ||
        cls == ContractionClass::kUnitary) {
      ++partial_isometries;
    }
  }
  // Support condition of W_psi, re-derived from each instance.
  double support = 0.0;
  for (int t = 0; t < 10; ++t) {
    std::uint64_t seed = trial_seed(cfg, 7, t);
    InstanceSpec spec = spec_of(InstanceKind::kRandomOperation, 2, 2, 2, substream(seed, 1));
    QuantumOperation phi = make_operation(spec);
    spec.seed = substream(seed, 2);
    QuantumOperation psi = make_operation(spec);
    auto [v_phi, v_psi] = common_stinespring(phi, psi, 2);
    const ComplexMatrix& u = out.traces[first + std::size_t(t)].u;
    ComplexMatrix lift = kron(ComplexMatrix::Identity(2, 2), u.adjoint() * u);
    support = std::max(support, max_abs(lift * v_psi.matrix() - v_psi.matrix()));
  }
  out.add(7, "closed_instances", b.converged, 10, 0.0, Direction::kAtLeast);
  out.add(7, "sandwich_validity", b.worst_validity, 0.0, 1e-8, Direction::kAtMost);
  out.add(7, "partial_isometry_residual", membership, 0.0, 1e-7, Direction::kAtMost);
  out.add(7, "partial_isometry_count", partial_isometries, 10, 0.0, Direction::kAtLeast);
  out.add(7, "w_psi_support_residual", support, 0.0, 1e-7, Direction::kAtMost);
}

void criterion8(const VerificationConfig& cfg, Collector& out) {
  // One instance with a rank-deficient phi, so the depolarized branch runs.
  Rng rng(trial_seed(cfg, 8, 0));
  QuantumOperation phi = gen_prepare_state(2, random_unit_vector(rng, 2));
  QuantumOperation psi = gen_random_channel(spec_of(InstanceKind::kRandomChannel, 2, 2, 2, rng.next_u64()));
  ContinuationOptions opts;
  opts.pad = 2;
  opts.saddle.tol = cfg.tol;
  out.traces.push_back(
      solve_with_continuation(phi, psi, linear_hamiltonian(2), EnergyBound{energy_fraction(rng, 2)}, opts));

  double smoothing_excess = -1.0, beta_excess = -1.0;
  int stages = 0;
  for (const SaddleCertificate& c : out.traces) {
    double estimate = 0.5 * (c.lower_bound + c.upper_bound);
    for (const StageRecord& s : c.p_trace) {
      if (s.p <= 0.0) continue;
      ++stages;
      double lhs = std::abs(s.enorm_smoothed * s.enorm_smoothed - s.enorm * s.enorm);
      smoothing_excess = std::max(smoothing_excess, lhs - s.p * s.operator_norm * s.operator_norm);
      double allowed = 2.0 * std::pow(2.0 * s.p, 0.25) + s.gap + c.gap;
      beta_excess = std::max(beta_excess, std::abs(s.beta_n - estimate) - allowed);
    }
  }
  out.add(8, "smoothed_enorm_inequality_excess", smoothing_excess, 0.0, 1e-12, Direction::kAtMost);
  out.add(8, "smoothed_distance_inequality_excess", beta_excess, 0.0, 0.0, Direction::kAtMost);
  out.add(8, "stages_checked", stages, 1, 0.0, Direction::kAtLeast);
}

void criterion9(const VerificationConfig& cfg, Collector& out) {
  struct Shape {
    Index d_a, d_b, k;
  };
  const Shape shapes[] = {{2, 4, 1}, {3, 4, 1}, {2, 3, 1}, {2, 2, 1}, {3, 3, 2}, {2, 5, 2}};
  double worst = 0.0;
  int deficient = 0;
  for (int t = 0; t < 50; ++t) {
    std::uint64_t seed = trial_seed(cfg, 9, t);
    const Shape& s = shapes[t % 6];
    QuantumOperation phi = make_operation(spec_of(InstanceKind::kRandomOperation, s.d_a, s.d_b, s.k, seed));
    HermitianOperator p = operation_support_subspace(phi, reference_state(s.d_a));
    if (p.matrix().trace().real() < double(s.d_b) - 0.5) ++deficient;
    ComplexMatrix outside = ComplexMatrix::Identity(s.d_b, s.d_b) - p.matrix();
    Rng rng(substream(seed, 7));
    for (int r = 0; r < 100; ++r) {
      Index rank_r = 1 + Index(rng.next_u64() % std::uint64_t(s.d_a));
      PositiveOperator out_state = apply(phi, random_state(rng, s.d_a, rank_r));
      worst = std::max(worst, max_abs(outside * out_state.matrix()));
    }
  }
  out.add(9, "support_projector_residual", worst, 0.0, 1e-8, Direction::kAtMost);
  out.add(9, "rank_deficient_supports", deficient, 1, 0.0, Direction::kAtLeast);
}

void criterion10(const VerificationConfig& cfg, Collector& out) {
  double rise = -1.0, gap_rise = -1.0;
  for (int t = 0; t < 10; ++t) {
    std::uint64_t seed = trial_seed(cfg, 10, t);
    Rng rng(seed);
    QuantumOperation phi = gen_random_channel(spec_of(InstanceKind::kRandomChannel, 2, 2, 2, substream(seed, 1)));
    QuantumOperation psi = gen_random_channel(spec_of(InstanceKind::kRandomChannel, 2, 2, 2, substream(seed, 2)));
    ContinuationOptions opts;
    opts.saddle.tol = cfg.tol;
    std::vector<SaddleCertificate> sweep =
        pad_sweep(phi, psi, linear_hamiltonian(2), EnergyBound{energy_fraction(rng, 2)}, {0, 1, 2, 4}, opts);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      rise = std::max(rise, sweep[i].upper_bound - sweep[i - 1].upper_bound);
    }
    gap_rise = std::max(gap_rise, sweep.back().gap - sweep.front().gap);
  }
  out.add(10, "upper_bound_increase", rise, 0.0, 1e-8, Direction::kAtMost);
  out.add(10, "gap_increase_pad4_vs_pad0", gap_rise, 0.0, 1e-8, Direction::kAtMost);
}

}  // namespace

CheckRecord make_check(int criterion, std::string name, double measured, double bound,
                       double tolerance, Direction direction) {
  bool ok = direction == Direction::kAtMost ? measured <= bound + tolerance
                                            : measured >= bound - tolerance;
  return CheckRecord{criterion, std::move(name), ok && std::isfinite(measured), measured, bound,
                     tolerance, direction, ""};
}

int Report::passed() const {
  return int(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; }));
}

int Report::failed() const { return int(checks.size()) - passed(); }

bool Report::criterion_passed(int criterion) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.criterion != criterion) continue;
    any = true;
    if (!c.passed) return false;
  }
  return any;
}

const char* criterion_title(int criterion) {
  return criterion >= 1 && criterion <= 10 ? kTitles[criterion] : "";
}

namespace {

// Value at energy e of the least concave majorant of the sampled points
// (energy, ||X phi||^2), restricted to energies <= e. The pure-state joint
// numerical range is convex, so every point under the hull is attained.
double hull_value(std::vector<std::pair<double, double>> pts, double e) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      double cross = (a.first - o.first) * (p.second - o.second) - (a.second - o.second) * (p.first - o.first);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (hull[i].first <= e) best = std::max(best, hull[i].second);
    if (i + 1 < hull.size() && hull[i].first <= e && hull[i + 1].first > e) {
      double w = (e - hull[i].first) / (hull[i + 1].first - hull[i].first);
      best = std::max(best, (1.0 - w) * hull[i].second + w * hull[i + 1].second);
    }
  }
  return best;
}

}  // namespace

double sphere_enorm_oracle(const ComplexMatrix& x, const Hamiltonian& h, EnergyBound e,
                           std::uint64_t seed, int samples) {
  Rng rng(seed);
  const Index d = h.dim();
  const ComplexMatrix& hm = h.matrix();
  auto energy = [&](const ComplexVector& v) { return v.dot(hm * v).real(); };
  std::vector<std::pair<double, double>> pts;
  pts.reserve(std::size_t(samples) + 1);
  ComplexVector best = h.ground_state();
  double best_value = (x * best).norm();
  pts.emplace_back(energy(best), best_value * best_value);
  for (int s = 0; s < samples; ++s) {
    ComplexVector v = random_unit_vector(rng, d);
    double val = (x * v).norm();
    double en = energy(v);
    pts.emplace_back(en, val * val);
    if (en <= e.value && val > best_value) {
      best_value = val;
      best = v;
    }
  }
  // Infeasible trial points are pulled back along the chord towards the
  // ground state until the energy constraint holds.
  const ComplexVector ground = h.ground_state();
  auto retract = [&](const ComplexVector& v) {
    if (energy(v) <= e.value) return v;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
      double mid = 0.5 * (lo + hi);
      ComplexVector w = (1.0 - mid) * v + mid * ground;
      (energy(w / w.norm()) <= e.value ? hi : lo) = mid;
    }
    ComplexVector w = (1.0 - hi) * v + hi * ground;
    return ComplexVector(w / w.norm());
  };
  double radius = 0.1;
  for (int s = 0; s < 200000 && radius > 1e-12; ++s) {
    ComplexVector v = best + radius * gaussian_matrix(rng, d, 1).col(0);
    v = retract(v / v.norm());
    double val = (x * v).norm();
    if (energy(v) <= e.value && val > best_value) {
      best_value = val;
      best = v;
      radius *= 1.5;
    } else {
      radius *= 0.998;
    }
  }
  return std::max(best_value, std::sqrt(hull_value(std::move(pts), e.value)));
}

Report run_verification_suite(const VerificationConfig& config) {
  if (config.trials < 1) throw InvalidInput("trials must be positive");
  if (!(config.tol > 0.0)) throw InvalidInput("tol must be positive");
  Report report;
  report.config = config;
  report.seconds.assign(11, 0.0);
  Collector out{report, {}};
  using Runner = std::function<void(const VerificationConfig&, Collector&)>;
  const Runner runners[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                            criterion6, criterion7, criterion8, criterion9, criterion10};
  for (int c = 1; c <= 10; ++c) {
    auto start = std::chrono::steady_clock::now();
    try {
      runners[c - 1](config, out);
    } catch (const std::exception& ex) {
      CheckRecord failed = make_check(c, "exception", 1.0, 0.0, 0.0, Direction::kAtMost);
      failed.note = ex.what();
      report.checks.push_back(std::move(failed));
    }
    report.seconds[std::size_t(c)] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

Json report_to_json(const Report& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j{{"criterion", c.criterion},
           {"name", c.name},
           {"status", c.passed ? "pass" : "fail"},
           {"measured", c.measured},
           {"bound", c.bound},
           {"tolerance", c.tolerance},
           {"direction", c.direction == Direction::kAtMost ? "at_most" : "at_least"}};
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  const VerificationConfig& cfg = report.config;
  return Json{{"checks", checks},
              {"summary", {{"passed", report.passed()}, {"failed", report.failed()}}},
              {"seed", cfg.seed},
              {"prng", "splitmix64-counter"},
              {"config",
               {{"trials", cfg.trials},
                {"dims", {cfg.d_a, cfg.d_b, cfg.kraus_count}},
                {"pad", cfg.pad},
                {"tol", cfg.tol}}}};
}

std::string report_text(const Report& report) {
  std::ostringstream os;
  os.precision(3);
  for (int c = 1; c <= 10; ++c) {
    os << "criterion " << c << " [" << (report.criterion_passed(c) ? "PASS" : "FAIL") << "] "
       << criterion_title(c) << " (" << std::fixed << report.seconds[std::size_t(c)] << " s)\n";
    os.unsetf(std::ios::fixed);
    for (const auto& k : report.checks) {
      if (k.criterion != c) continue;
      os << "    " << (k.passed ? "pass" : "FAIL") << "  " << k.name << ": measured "
         << k.measured << (k.direction == Direction::kAtMost ? " <= " : " >= ") << k.bound
         << (k.direction == Direction::kAtMost ? " + " : " - ") << k.tolerance;
      if (!k.note.empty()) os << "  (" << k.note << ")";
      os << "\n";
    }
  }
  os << report.passed() << " checks passed, " << report.failed() << " failed\n";
  return os.str();
}

}  // namespace ecbures
