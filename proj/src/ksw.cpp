#include "ecbures/ksw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecbures/random.hpp"

namespace ecbures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix lift(const ComplexMatrix& u, Index d_b) {
  return kron(ComplexMatrix::Identity(d_b, d_b), u);
}

ComplexMatrix smoothed(const KswProblem& prob, const ComplexMatrix& rho) {
  double p = prob.smoothing().p();
  if (p == 0.0) return rho;
  return (1.0 - p) * rho + p * prob.smoothing().sigma().matrix();
}

// K = Tr_B [V_psi T V_phi^dagger]; Re Tr (U K) is the cross term of f.
ComplexMatrix cross_operator(const KswProblem& prob, const ComplexMatrix& theta) {
  ComplexMatrix joint = prob.v_psi().matrix() * theta * prob.v_phi().matrix().adjoint();
  return partial_trace(joint, prob.d_b(), prob.d_e(), Factor::kFirst);
}

// f(rho, U) = Tr N(U) T(rho)
ComplexMatrix objective_operator(const KswProblem& prob, const ComplexMatrix& u) {
  ComplexMatrix g =
      prob.v_phi().matrix().adjoint() * lift(u, prob.d_b()) * prob.v_psi().matrix();
  return prob.trace_operator() - g - g.adjoint();
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

// Stinespring difference X = V_phi - (I (x) U) V_psi.
ComplexMatrix difference_operator(const KswProblem& prob, const ComplexMatrix& u) {
  return prob.v_phi().matrix() - lift(u, prob.d_b()) * prob.v_psi().matrix();
}

ComplexMatrix clip_to_unit_ball(const ComplexMatrix& u) {
  Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector s = svd.singularValues().cwiseMin(1.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

// Euclidean projection of a real vector onto the probability simplex.
RealVector project_simplex(const RealVector& v) {
  RealVector sorted = v;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Index i = 0; i < sorted.size(); ++i) {
    cumulative += sorted(i);
    double t = (cumulative - 1.0) / double(i + 1);
    if (sorted(i) - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

ComplexMatrix project_spectraplex(const ComplexMatrix& y) {
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(y));
  RealVector w = project_simplex(ed.eigenvalues);
  return ed.eigenvectors * w.asDiagonal() * ed.eigenvectors.adjoint();
}

double energy_of(const ComplexMatrix& rho, const Hamiltonian& h) {
  return real_trace_product(h.matrix(), rho);
}

// Orthonormal columns spanning the range of a projector.
ComplexMatrix range_basis(const ComplexMatrix& projector) {
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(projector));
  Index r = 0;
  while (r < ed.eigenvalues.size() && ed.eigenvalues(r) > 0.5) ++r;
  return ed.eigenvectors.leftCols(r);
}

// Fills the defect P_psi - W^dagger W of a partial isometry W isometrically
// into range(W)^perp, preferring directions orthogonal to the support of V_phi.
ComplexMatrix fill_defect(const KswProblem& prob, const ComplexMatrix& w) {
  const Index d_e = prob.d_e();
  ComplexMatrix eye = ComplexMatrix::Identity(d_e, d_e);
  ComplexMatrix defect = prob.p_psi().matrix() - w.adjoint() * w;
  ComplexMatrix sources = range_basis(defect);
  if (sources.cols() == 0) return w;
  ComplexMatrix free_range = eye - w * w.adjoint();
  ComplexMatrix preference = free_range * (2.0 * eye - prob.q_phi().matrix()) * free_range;
  EigenDecomposition ed = eigh(HermitianOperator::unchecked(preference));
  ComplexMatrix targets = ed.eigenvectors.leftCols(sources.cols());
  return w + targets * sources.adjoint();
}

double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

void check_operations(const QuantumOperation& phi, const QuantumOperation& psi,
                      const Hamiltonian& h, EnergyBound e) {
  if (phi.d_in() != psi.d_in() || phi.d_out() != psi.d_out()) {
    throw InvalidInput("operations act between different spaces");
  }
  if (h.dim() != phi.d_in()) throw InvalidInput("Hamiltonian dimension differs from the input space");
  require_energy_above_ground(h, e);
}

ComplexMatrix embed(const ComplexMatrix& u, Index d_e) {
  ComplexMatrix out = ComplexMatrix::Zero(d_e, d_e);
  out.topLeftCorner(u.rows(), u.cols()) = u;
  return out;
}

}  // namespace

KswProblem::KswProblem(StinespringOperator v_phi, StinespringOperator v_psi, Hamiltonian h,
                       EnergyBound energy, SmoothingParams smoothing, HermitianOperator p_psi,
                       HermitianOperator q_phi)
    : v_phi_(std::move(v_phi)),
      v_psi_(std::move(v_psi)),
      h_(std::move(h)),
      energy_(energy),
      smoothing_(std::move(smoothing)),
      p_psi_(std::move(p_psi)),
      q_phi_(std::move(q_phi)) {
  trace_op_ = v_phi_.matrix().adjoint() * v_phi_.matrix() +
              v_psi_.matrix().adjoint() * v_psi_.matrix();
}

KswProblem KswProblem::make(StinespringOperator v_phi, StinespringOperator v_psi, Hamiltonian h,
                            EnergyBound energy, SmoothingParams smoothing,
                            std::optional<HermitianOperator> p_psi) {
  if (v_phi.d_a() != v_psi.d_a() || v_phi.d_b() != v_psi.d_b() || v_phi.d_e() != v_psi.d_e()) {
    throw InvalidInput("KswProblem: Stinespring operators act between different spaces");
  }
  if (h.dim() != v_phi.d_a()) throw InvalidInput("KswProblem: Hamiltonian dimension mismatch");
  if (smoothing.sigma().dim() != v_phi.d_a()) {
    throw InvalidInput("KswProblem: smoothing state dimension mismatch");
  }
  require_energy_above_ground(h, energy);
  PositiveOperator sigma = reference_state(v_phi.d_a());
  if (!p_psi) p_psi = environment_support_projector(v_psi, sigma);
  const ComplexMatrix& p = p_psi->matrix();
  if (p.rows() != v_psi.d_e()) throw InvalidInput("KswProblem: P_psi dimension mismatch");
  if (max_abs(p * p - p) > 1e-8) throw InvalidInput("KswProblem: P_psi is not a projector");
  if (max_abs(lift(p, v_psi.d_b()) * v_psi.matrix() - v_psi.matrix()) > 1e-8) {
    throw InvalidInput("KswProblem: P_psi does not contain the environment support of V_psi");
  }
  HermitianOperator q_phi = environment_support_projector(v_phi, sigma);
  return KswProblem(std::move(v_phi), std::move(v_psi), std::move(h), energy, std::move(smoothing),
                    std::move(*p_psi), std::move(q_phi));
}

double objective_fn(const KswProblem& prob, const PositiveOperator& rho, const ComplexMatrix& u) {
  if (rho.dim() != prob.d_a()) throw InvalidInput("objective_fn: state dimension mismatch");
  if (u.rows() != prob.d_e() || u.cols() != prob.d_e()) {
    throw InvalidInput("objective_fn: U does not act on the environment");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw InvalidInput("objective_fn: state is not normalized");
  if (operator_norm(u) > 1.0 + 1e-9) throw InvalidInput("objective_fn: U is not a contraction");
  ComplexMatrix theta = smoothed(prob, rho.matrix());
  const ComplexMatrix& vp = prob.v_phi().matrix();
  const ComplexMatrix& vq = prob.v_psi().matrix();
  double tr_phi = (vp * theta * vp.adjoint()).trace().real();
  double tr_psi = (vq * theta * vq.adjoint()).trace().real();
  double cross = (vp.adjoint() * lift(u, prob.d_b()) * vq * theta).trace().real();
  return tr_phi + tr_psi - 2.0 * cross;
}

ConstrainedOptimum rho_step(const KswProblem& prob, const ComplexMatrix& u) {
  if (u.rows() != prob.d_e() || u.cols() != prob.d_e()) {
    throw InvalidInput("rho_step: U does not act on the environment");
  }
  double p = prob.smoothing().p();
  ComplexMatrix n = objective_operator(prob, u);
  ComplexMatrix m = (1.0 - p) * n;
  if (p > 0.0) {
    double shift = p * real_trace_product(n, prob.smoothing().sigma().matrix());
    m += shift * ComplexMatrix::Identity(prob.d_a(), prob.d_a());
  }
  return max_linear_over_energy_ball(HermitianOperator::unchecked(m), prob.hamiltonian(),
                                     prob.energy());
}

ComplexMatrix u_step(const KswProblem& prob, const PositiveOperator& rho) {
  if (rho.dim() != prob.d_a()) throw InvalidInput("u_step: state dimension mismatch");
  ComplexMatrix k = cross_operator(prob, smoothed(prob, rho.matrix()));
  return polar(k).isometry.adjoint() * prob.p_psi().matrix();
}

double best_response_value(const KswProblem& prob, const PositiveOperator& rho) {
  ComplexMatrix theta = smoothed(prob, rho.matrix());
  return real_trace_product(prob.trace_operator(), theta) -
         2.0 * trace_norm(cross_operator(prob, theta));
}

ComplexMatrix extract_partial_isometry(const ComplexMatrix& u, const HermitianOperator& p_psi) {
  const ComplexMatrix& p = p_psi.matrix();
  if (u.cols() != p.rows()) throw InvalidInput("extract_partial_isometry: dimension mismatch");
  if (max_abs(u.adjoint() * u - p) <= kMembershipTol) return u * p;
  return polar(ComplexMatrix(u * p)).isometry;
}

double w_psi_residual(const KswProblem& prob, const ComplexMatrix& u) {
  ComplexMatrix uu = u.adjoint() * u;
  const ComplexMatrix& vq = prob.v_psi().matrix();
  double support = max_abs(lift(uu, prob.d_b()) * vq - vq);
  double idempotent = max_abs(uu * uu - uu);
  return std::max(support, idempotent);
}

ComplexMatrix complete_to_w_psi(const KswProblem& prob, const ComplexMatrix& u) {
  if (u.rows() != prob.d_e() || u.cols() != prob.d_e()) {
    throw InvalidInput("complete_to_w_psi: U does not act on the environment");
  }
  const ComplexMatrix& p = prob.p_psi().matrix();
  const ComplexMatrix& q = prob.q_phi().matrix();
  const Index d_e = prob.d_e();

  // f depends on U only through Q_phi U P_psi. Keep that block and complete it
  // with sqrt(P_psi - B^dagger B) routed into range(I - Q_phi).
  ComplexMatrix b = q * clip_to_unit_ball(u) * p;
  EigenDecomposition defect = eigh(HermitianOperator::unchecked(p - b.adjoint() * b));
  Index needed = 0;
  while (needed < d_e && defect.eigenvalues(needed) > 1e-12) ++needed;
  ComplexMatrix free_cols = range_basis(ComplexMatrix::Identity(d_e, d_e) - q);
  if (free_cols.cols() >= needed) {
    ComplexMatrix extra = ComplexMatrix::Zero(d_e, d_e);
    for (Index i = 0; i < needed; ++i) {
      extra += std::sqrt(defect.eigenvalues(i)) * free_cols.col(i) *
               defect.eigenvectors.col(i).adjoint();
    }
    ComplexMatrix dilated = polar(ComplexMatrix(b + extra)).isometry;
    if (w_psi_residual(prob, dilated) <= kMembershipTol) return dilated;
  }
  return fill_defect(prob, extract_partial_isometry(u, prob.p_psi()));
}

double ksw_upper_bound(const KswProblem& prob, const ComplexMatrix& u) {
  if (u.rows() != prob.d_e() || u.cols() != prob.d_e()) {
    throw InvalidInput("ksw_upper_bound: U does not act on the environment");
  }
  double residual = w_psi_residual(prob, u);
  if (residual > kMembershipTol) {
    throw InvalidInput("ksw_upper_bound: U is not in W_psi (residual " + std::to_string(residual) +
                       ")");
  }
  return enorm(difference_operator(prob, u), prob.hamiltonian(), prob.energy());
}

double ecbures_lower_bound(const QuantumOperation& phi, const QuantumOperation& psi,
                           const Hamiltonian& h, EnergyBound e, const PositiveOperator& rho) {
  check_operations(phi, psi, h, e);
  if (rho.dim() != h.dim()) throw InvalidInput("ecbures_lower_bound: state dimension mismatch");
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw InvalidInput("ecbures_lower_bound: state is not normalized");
  }
  double energy = energy_of(rho.matrix(), h);
  if (energy > e.value + kEnergyTol) {
    throw InvalidInput("ecbures_lower_bound: state violates the energy constraint");
  }
  ComplexMatrix state = rho.matrix();
  if (energy > e.value) {
    double t = (energy - e.value) / (energy - h.ground_energy());
    ComplexVector g = h.ground_state();
    state = (1.0 - t) * state + t * g * g.adjoint();
  }
  Purification w = purify(PositiveOperator::unchecked(state), 0.0);
  PositiveOperator omega = PositiveOperator::pure(w.vector);
  return bures_distance(apply_extended(phi, omega, w.d_r), apply_extended(psi, omega, w.d_r));
}

namespace {

// Pure states on H_A (x) H_R with d_R = d_A, stored as the d_A x d_A
// coefficient matrix; the A-marginal is C C^dagger.
struct DirectAscent {
  const QuantumOperation& phi;
  const QuantumOperation& psi;
  const Hamiltonian& h;
  EnergyBound e;
  Index d;

  double energy(const ComplexMatrix& c) const {
    return real_trace_product(h.matrix(), c * c.adjoint());
  }

  double value(const ComplexMatrix& c) const {
    ComplexVector omega(d * d);
    for (Index a = 0; a < d; ++a)
      for (Index i = 0; i < d; ++i) omega(a * d + i) = c(a, i);
    PositiveOperator w = PositiveOperator::pure(omega);
    PositiveOperator out_phi = apply_extended(phi, w, d);
    PositiveOperator out_psi = apply_extended(psi, w, d);
    double radicand = out_phi.trace() + out_psi.trace() - 2.0 * std::sqrt(fidelity(out_phi, out_psi));
    return std::max(radicand, 0.0);
  }

  // Normalizes and, if needed, damps the excited components with
  // (I + nu H)^{-1} until the energy constraint holds.
  ComplexMatrix project(ComplexMatrix c) const {
    c /= c.norm();
    if (energy(c) <= e.value) return c;
    const ComplexMatrix& basis = h.basis();
    ComplexMatrix coeffs = basis.adjoint() * c;
    if (coeffs.row(0).norm() < 1e-6) {
      coeffs(0, 0) += 1e-3;
    }
    auto damped = [&](double nu) {
      ComplexMatrix x = coeffs;
      for (Index k = 0; k < d; ++k) x.row(k) /= 1.0 + nu * (h.eigenvalues()(k) - h.ground_energy());
      ComplexMatrix out = basis * x;
      return ComplexMatrix(out / out.norm());
    };
    double lo = 0.0, hi = 1.0;
    while (energy(damped(hi)) > e.value && hi < 1e12) hi *= 4.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      (energy(damped(mid)) > e.value ? lo : hi) = mid;
    }
    return damped(hi);
  }

  double ascend(ComplexMatrix& c, int max_iter) const {
    c = project(c);
    double v = value(c);
    double step = 0.1;
    const double fd = 1e-6;
    for (int it = 0; it < max_iter && step > 1e-13; ++it) {
      ComplexMatrix grad(d, d);
      for (Index a = 0; a < d; ++a) {
        for (Index i = 0; i < d; ++i) {
          for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
            ComplexMatrix plus = c, minus = c;
            plus(a, i) += fd * dir;
            minus(a, i) -= fd * dir;
            double g = (value(plus) - value(minus)) / (2.0 * fd);
            grad(a, i) += g * dir;
          }
        }
      }
      bool moved = false;
      while (step > 1e-13) {
        ComplexMatrix trial = project(c + step * grad);
        double tv = value(trial);
        if (tv > v) {
          moved = tv - v > 1e-15;
          c = trial;
          v = tv;
          step *= 1.5;
          break;
        }
        step *= 0.5;
      }
      if (!moved && step <= 1e-13) break;
    }
    return v;
  }

  // Random-direction hill climbing; crosses the kinks where the finite
  // difference gradient stalls.
  double polish(ComplexMatrix& c, double v, Rng& rng, int trials) const {
    double radius = 1e-2;
    for (int t = 0; t < trials && radius > 1e-12; ++t) {
      ComplexMatrix trial = project(c + radius * gaussian_matrix(rng, d, d));
      double tv = value(trial);
      if (tv > v) {
        c = trial;
        v = tv;
        radius *= 2.0;
      } else {
        radius *= 0.9;
      }
    }
    return v;
  }
};

}  // namespace

double direct_ecbures(const QuantumOperation& phi, const QuantumOperation& psi,
                      const Hamiltonian& h, EnergyBound e, int restarts, std::uint64_t seed) {
  check_operations(phi, psi, h, e);
  if (restarts < 1) throw InvalidInput("direct_ecbures: restarts must be positive");
  DirectAscent ascent{phi, psi, h, e, phi.d_in()};
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(substream(seed, std::uint64_t(r)));
    ComplexMatrix c = gaussian_matrix(rng, ascent.d, ascent.d);
    double v = ascent.ascend(c, 300);
    v = ascent.polish(c, v, rng, 2000);
    best = std::max(best, ascent.ascend(c, 100));
    best = std::max(best, v);
  }
  return std::sqrt(best);
}

PositiveOperator project_to_energy_states(const HermitianOperator& y, const Hamiltonian& h,
                                          EnergyBound e) {
  if (y.dim() != h.dim()) throw InvalidInput("project_to_energy_states: dimension mismatch");
  require_energy_above_ground(h, e);
  const ComplexMatrix& hm = h.matrix();
  auto at = [&](double mu) { return project_spectraplex(y.matrix() - mu * hm); };
  ComplexMatrix rho = at(0.0);
  if (energy_of(rho, h) <= e.value) return PositiveOperator::unchecked(rho);
  double lo = 0.0, hi = 1.0;
  while (energy_of(at(hi), h) > e.value) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw NumericalFailure("project_to_energy_states: no feasible multiplier");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (energy_of(at(mid), h) > e.value ? lo : hi) = mid;
  }
  return PositiveOperator::unchecked(at(hi));
}

namespace {

struct Incumbents {
  double lower = -kInf;  // min_U f(rho, U)
  ComplexMatrix rho;
  double upper = kInf;  // max_rho f(rho, U)
  ComplexMatrix u;

  double gap() const { return safe_sqrt(upper) - safe_sqrt(lower); }

  void offer_rho(const ComplexMatrix& r, double g) {
    if (g > lower) {
      lower = g;
      rho = r;
    }
  }

  void offer_u(const KswProblem& prob, const ComplexMatrix& c) {
    double hv = rho_step(prob, c).value;
    if (hv < upper) {
      upper = hv;
      u = c;
    }
  }
};

double g_value(const KswProblem& prob, const ComplexMatrix& rho) {
  return best_response_value(prob, PositiveOperator::unchecked(rho));
}

// Response to rho of the regularized problem min_U f(rho, U) + mu psi(U) with
// psi(U) = 2 sum_i (1 - sqrt(1 - c_i^2)) over the singular values c_i of U. The
// minimizer has singular values s / sqrt(s^2 + mu^2) against those of K, and
// the value Tr A T(rho) - 2 sum (sqrt(s^2 + mu^2) - mu) is smooth in rho.
struct Response {
  ComplexMatrix u;
  double exact;     // min_U f(rho, U)
  double smoothed;  // min_U f(rho, U) + mu psi(U)
};

Response respond(const KswProblem& prob, const ComplexMatrix& rho, double mu) {
  ComplexMatrix theta = smoothed(prob, rho);
  ComplexMatrix k = cross_operator(prob, theta);
  Eigen::JacobiSVD<ComplexMatrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  double base = real_trace_product(prob.trace_operator(), theta);
  RealVector weight(s.size());
  double exact = base;
  double smooth = base;
  for (Index i = 0; i < s.size(); ++i) {
    double root = std::hypot(s(i), mu);
    exact -= 2.0 * s(i);
    smooth -= 2.0 * (root - mu);
    weight(i) = root > 0.0 ? s(i) / root : 1.0;
  }
  ComplexMatrix u = svd.matrixV() * weight.asDiagonal() * svd.matrixU().adjoint() *
                    prob.p_psi().matrix();
  return {std::move(u), exact, smooth};
}

// Orthonormal basis of the traceless Hermitian matrices (Frobenius inner product).
std::vector<ComplexMatrix> traceless_basis(Index d) {
  std::vector<ComplexMatrix> out;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(d, d), im = ComplexMatrix::Zero(d, d);
      re(i, j) = re(j, i) = std::sqrt(0.5);
      im(i, j) = Complex(0.0, -std::sqrt(0.5));
      im(j, i) = Complex(0.0, std::sqrt(0.5));
      out.push_back(re);
      out.push_back(im);
    }
  }
  for (Index k = 1; k < d; ++k) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < k; ++i) diag(i, i) = 1.0;
    diag(k, k) = -double(k);
    out.push_back(diag / std::sqrt(double(k * (k + 1))));
  }
  return out;
}

// Barrier-regularized smoothed objective
//   g_mu(rho) + tau (log det rho + log(E - Tr H rho))
// on the affine slice Tr rho = 1.
struct BarrierObjective {
  const KswProblem& prob;
  std::vector<ComplexMatrix> basis;
  double mu;
  double tau;

  bool interior(const ComplexMatrix& rho) const {
    if (energy_of(rho, prob.hamiltonian()) >= prob.energy().value) return false;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) > 0.0;
  }

  double value(const ComplexMatrix& rho) const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
    double slack = prob.energy().value - energy_of(rho, prob.hamiltonian());
    return respond(prob, rho, mu).smoothed +
           tau * (es.eigenvalues().array().log().sum() + std::log(slack));
  }

  RealVector gradient(const ComplexMatrix& rho, const ComplexMatrix& u) const {
    const double p = prob.smoothing().p();
    const ComplexMatrix& hm = prob.hamiltonian().matrix();
    double slack = prob.energy().value - energy_of(rho, prob.hamiltonian());
    ComplexMatrix g = (1.0 - p) * objective_operator(prob, u) +
                      tau * (ComplexMatrix(rho.inverse()) - hm / slack);
    RealVector out(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) out(j) = real_trace_product(g, basis[j]);
    return out;
  }

  RealVector gradient(const ComplexMatrix& rho) const {
    return gradient(rho, respond(prob, rho, mu).u);
  }

  ComplexMatrix move(const ComplexMatrix& rho, const RealVector& x) const {
    ComplexMatrix out = rho;
    for (std::size_t j = 0; j < basis.size(); ++j) out += x(j) * basis[j];
    return out;
  }
};

// A strictly feasible full-rank state: ground state mixed with I / d.
ComplexMatrix interior_state(const Hamiltonian& h, EnergyBound e) {
  const Index d = h.dim();
  double mean = h.eigenvalues().mean();
  double delta = mean > h.ground_energy()
                     ? std::min(1.0, 0.5 * (e.value - h.ground_energy()) / (mean - h.ground_energy()))
                     : 1.0;
  ComplexVector g = h.ground_state();
  return (1.0 - delta) * g * g.adjoint() + delta * ComplexMatrix::Identity(d, d) / double(d);
}

int run_newton(const KswProblem& prob, const SaddleOptions& opts, const ComplexMatrix& rho0,
               Incumbents& inc) {
  const Index d = prob.d_a();
  BarrierObjective obj{prob, traceless_basis(d), 1e-1, 1e-1};
  const std::size_t n = obj.basis.size();
  ComplexMatrix rho = 0.999 * rho0 + 0.001 * interior_state(prob.hamiltonian(), prob.energy());
  const double floor = 1e-10;
  auto offer = [&]() {
    Response r = respond(prob, rho, obj.mu);
    inc.offer_rho(rho, r.exact);
    inc.offer_u(prob, r.u);
    inc.offer_u(prob, respond(prob, rho, 0.0).u);
  };
  offer();
  int it = 0;
  while (it < opts.max_iter && inc.gap() > opts.tol && n > 0) {
    // Newton iterations at fixed (mu, tau).
    for (int inner = 0; inner < 50 && it < opts.max_iter; ++inner) {
      ++it;
      RealVector grad = obj.gradient(rho);
      Eigen::MatrixXd hess(n, n);
      for (std::size_t j = 0; j < n; ++j) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
        double hstep = 1e-4 * std::min(1.0, es.eigenvalues()(0));
        RealVector e = RealVector::Zero(n);
        e(j) = hstep;
        hess.col(j) = (obj.gradient(obj.move(rho, e)) - obj.gradient(obj.move(rho, -e))) /
                      (2.0 * hstep);
      }
      hess = 0.5 * (hess + hess.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(hess);
      double scale = 1e-12 * (1.0 + hs.eigenvalues().cwiseAbs().maxCoeff());
      RealVector curvature = -hs.eigenvalues().cwiseAbs().cwiseMax(scale);
      RealVector dir = -hs.eigenvectors() * (hs.eigenvectors().transpose() * grad).cwiseQuotient(curvature);
      double decrement = grad.dot(dir);
      if (!(decrement > 1e-14)) break;
      double v0 = obj.value(rho);
      double t = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        ComplexMatrix trial = obj.move(rho, t * dir);
        if (!obj.interior(trial)) continue;
        if (obj.value(trial) >= v0 + 0.25 * t * decrement) {
          rho = trial;
          moved = true;
          break;
        }
      }
      if (!moved || decrement < 1e-13) break;
    }
    offer();
    if (obj.mu <= floor && obj.tau <= floor) break;
    obj.mu = std::max(0.2 * obj.mu, floor);
    obj.tau = std::max(0.2 * obj.tau, floor);
  }
  inc.offer_rho(rho, respond(prob, rho, 0.0).exact);
  return it;
}

int run_averaging(const KswProblem& prob, const SaddleOptions& opts, const ComplexMatrix& rho0,
                  Incumbents& inc) {
  ComplexMatrix rho_bar = rho0;
  ComplexMatrix u_bar = u_step(prob, PositiveOperator::unchecked(rho0));
  int it = 0;
  while (it < opts.max_iter) {
    ++it;
    ComplexMatrix rho_t = rho_step(prob, u_bar).rho_star.matrix();
    ComplexMatrix u_t = u_step(prob, PositiveOperator::unchecked(rho_bar));
    double w = 1.0 / double(it + 1);
    rho_bar += w * (rho_t - rho_bar);
    u_bar += w * (u_t - u_bar);
    inc.offer_rho(rho_bar, g_value(prob, rho_bar));
    inc.offer_u(prob, u_bar);
    inc.offer_u(prob, u_t);
    if (inc.gap() <= opts.tol) break;
  }
  return it;
}

}  // namespace

SaddleCertificate solve_saddle(const KswProblem& prob, const SaddleOptions& opts,
                               const WarmStart& start) {
  if (!(opts.tol > 0.0)) throw InvalidInput("solve_saddle: tol must be positive");
  if (opts.max_iter < 1) throw InvalidInput("solve_saddle: max_iter must be positive");
  const Index d_a = prob.d_a();
  const Index d_e = prob.d_e();
  const Hamiltonian& h = prob.hamiltonian();

  ComplexMatrix rho0 = start.rho && start.rho->dim() == d_a
                           ? start.rho->matrix()
                           : PositiveOperator::maximally_mixed(d_a).matrix();
  rho0 = project_to_energy_states(HermitianOperator::unchecked(rho0), h, prob.energy()).matrix();

  Incumbents inc;
  inc.rho = rho0;
  inc.u = ComplexMatrix::Zero(d_e, d_e);
  if (start.u && start.u->rows() == d_e && start.u->cols() == d_e) {
    inc.offer_u(prob, clip_to_unit_ball(*start.u));
  }
  int iterations = opts.dynamics == SaddleDynamics::kAveraging
                       ? run_averaging(prob, opts, rho0, inc)
                       : run_newton(prob, opts, rho0, inc);

  ComplexMatrix u = complete_to_w_psi(prob, inc.u);
  ConstrainedOptimum at_u = rho_step(prob, u);
  PositiveOperator rho = PositiveOperator::unchecked(inc.rho);

  StageRecord rec;
  rec.p = prob.smoothing().p();
  rec.smoothed_lower = safe_sqrt(inc.lower);
  rec.smoothed_upper = safe_sqrt(std::min(inc.upper, at_u.value));
  rec.gap = rec.smoothed_upper - rec.smoothed_lower;
  rec.beta_n = safe_sqrt(objective_fn(prob, rho, u));
  ComplexMatrix x = difference_operator(prob, u);
  rec.enorm = enorm(x, h, prob.energy());
  rec.enorm_smoothed = enorm_smoothed(x, h, prob.energy(), prob.smoothing());
  rec.operator_norm = operator_norm(x);
  rec.iterations = iterations;
  rec.converged = inc.gap() <= opts.tol;

  QuantumOperation phi = kraus_from_stinespring(prob.v_phi());
  QuantumOperation psi = kraus_from_stinespring(prob.v_psi());
  double lower = ecbures_lower_bound(phi, psi, h, prob.energy(), rho);
  double upper = rec.enorm;
  return SaddleCertificate{std::move(u), std::move(rho), lower, upper, upper - lower, {rec},
                           iterations, rec.converged};
}

double beta_n(const KswProblem& prob, const SaddleOptions& opts) {
  return solve_saddle(prob, opts).p_trace.back().beta_n;
}

SaddleCertificate solve_with_continuation(const QuantumOperation& phi, const QuantumOperation& psi,
                                          const Hamiltonian& h, EnergyBound e,
                                          const ContinuationOptions& opts) {
  check_operations(phi, psi, h, e);
  for (std::size_t i = 0; i < opts.schedule.size(); ++i) {
    double p = opts.schedule[i];
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput("schedule entries must lie in (0, 1)");
    if (i > 0 && !(p < opts.schedule[i - 1])) {
      throw InvalidInput("schedule must be strictly decreasing");
    }
  }
  const PositiveOperator sigma_a = reference_state(phi.d_in());
  const PositiveOperator sigma_b = reference_state(phi.d_out());
  const bool degenerate = rank(apply(phi, sigma_a)) < phi.d_out();

  WarmStart warm;
  std::vector<StageRecord> trace;
  int iterations = 0;
  for (double p : opts.schedule) {
    QuantumOperation phi_p =
        degenerate ? depolarize_operation(phi, SmoothingParams::make(p, sigma_b)) : phi;
    auto [v_phi, v_psi] = common_stinespring(phi_p, psi, opts.pad);
    KswProblem prob = KswProblem::make(std::move(v_phi), std::move(v_psi), h, e,
                                       SmoothingParams::make(p, sigma_a));
    SaddleCertificate stage = solve_saddle(prob, opts.saddle, warm);
    StageRecord rec = stage.p_trace.back();
    rec.depolarized = degenerate;
    trace.push_back(rec);
    iterations += stage.iterations;
    warm.rho = stage.rho;
    warm.u = stage.u;
  }
  auto [v_phi, v_psi] = common_stinespring(phi, psi, opts.pad);
  KswProblem prob = KswProblem::make(std::move(v_phi), std::move(v_psi), h, e,
                                     SmoothingParams::make(0.0, sigma_a));
  SaddleCertificate cert = solve_saddle(prob, opts.saddle, warm);
  trace.push_back(cert.p_trace.back());
  cert.p_trace = std::move(trace);
  cert.iterations += iterations;
  return cert;
}

std::vector<SaddleCertificate> pad_sweep(const QuantumOperation& phi, const QuantumOperation& psi,
                                         const Hamiltonian& h, EnergyBound e,
                                         const std::vector<Index>& pads,
                                         const ContinuationOptions& opts) {
  std::vector<SaddleCertificate> out;
  for (std::size_t i = 0; i < pads.size(); ++i) {
    if (i > 0 && pads[i] < pads[i - 1]) throw InvalidInput("pad_sweep: pads must be increasing");
    ContinuationOptions stage_opts = opts;
    stage_opts.pad = pads[i];
    SaddleCertificate cert = solve_with_continuation(phi, psi, h, e, stage_opts);
    if (!out.empty()) {
      const SaddleCertificate& prev = out.back();
      auto [v_phi, v_psi] = common_stinespring(phi, psi, pads[i]);
      KswProblem prob = KswProblem::make(std::move(v_phi), std::move(v_psi), h, e,
                                         SmoothingParams::make(0.0, reference_state(phi.d_in())));
      if (prev.upper_bound < cert.upper_bound) {
        ComplexMatrix u = embed(prev.u, prob.d_e());
        double upper = ksw_upper_bound(prob, u);
        if (upper < cert.upper_bound) {
          cert.u = std::move(u);
          cert.upper_bound = upper;
        }
      }
      if (prev.lower_bound > cert.lower_bound) {
        cert.rho = prev.rho;
        cert.lower_bound = prev.lower_bound;
      }
      cert.gap = cert.upper_bound - cert.lower_bound;
    }
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace ecbures
