#include "pqs/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

using CVec = Eigen::Map<VectorXcd>;
using CVecConst = Eigen::Map<const VectorXcd>;

struct LanczosBasis {
  std::vector<StateVector> v;  // orthonormal basis vectors
  VectorXd alpha;              // diagonal of T
  VectorXd beta;               // off-diagonal of T (beta[j] couples j, j+1)
  double next_beta = 0.0;      // coupling to the discarded v_{m}
  bool invariant = false;      // happy breakdown: subspace is exact
};

CVecConst map_of(const StateVector& s) {
  return CVecConst(s.amps.data(), static_cast<Eigen::Index>(s.dim()));
}
CVec map_of(StateVector& s) {
  return CVec(s.amps.data(), static_cast<Eigen::Index>(s.dim()));
}

// Lanczos with two-pass classical Gram-Schmidt against the whole basis;
// subsystem registers are small, so robustness wins over the 3-term shortcut.
LanczosBasis lanczos(const StateVector& start, const PauliSum& h, int max_dim) {
  LanczosBasis out;
  const int m_cap = std::max(2, max_dim);
  out.alpha = VectorXd::Zero(m_cap);
  out.beta = VectorXd::Zero(m_cap);
  out.v.reserve(m_cap);

  StateVector v0 = start;
  const double n0 = v0.norm();
  map_of(v0) /= n0;
  out.v.push_back(std::move(v0));

  const double scale = std::max(h.one_norm(), 1e-30);
  StateVector w(start.n_qubits);
  for (int j = 0; j < m_cap; ++j) {
    apply_pauli_sum_into(out.v[j], h, w);
    auto wm = map_of(w);
    out.alpha[j] = map_of(out.v[j]).dot(wm).real();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < out.v.size(); ++i) {
        const complexd c = map_of(out.v[i]).dot(wm);
        wm -= c * map_of(out.v[i]);
      }
    }
    const double b = wm.norm();
    if (b <= 1e-14 * scale) {
      out.invariant = true;
      break;
    }
    if (j + 1 < m_cap) {
      out.beta[j] = b;
      StateVector next(start.n_qubits);
      map_of(next) = wm / b;
      out.v.push_back(std::move(next));
    } else {
      out.next_beta = b;
    }
  }
  const int m = static_cast<int>(out.v.size());
  out.alpha.conservativeResize(m);
  out.beta.conservativeResize(std::max(0, m - 1));
  return out;
}

struct SmallExp {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig;
  explicit SmallExp(const LanczosBasis& lb) {
    const int m = static_cast<int>(lb.v.size());
    MatrixXd t = MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = lb.alpha[i];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = lb.beta[i];
    eig.compute(t);
  }
  // u(s) = exp(-i T s) e_1 in the Krylov coordinates.
  VectorXcd u(double s) const {
    const VectorXd c = eig.eigenvectors().row(0);
    VectorXcd phases(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      phases[k] = std::exp(complexd(0.0, -s * eig.eigenvalues()[k])) * c[k];
    }
    return eig.eigenvectors() * phases;
  }
  // |u_m(s)| of the last Krylov coordinate, used by the residual estimate.
  double last_component(double s) const {
    const Eigen::Index m = eig.eigenvalues().size();
    const VectorXd c = eig.eigenvectors().row(0);
    const VectorXd w = eig.eigenvectors().row(m - 1);
    complexd acc = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      acc += w[k] * c[k] * std::exp(complexd(0.0, -s * eig.eigenvalues()[k]));
    }
    return std::abs(acc);
  }
  // Integral bound on the defect over [0, dt].
  double residual(double dt, double next_beta) const {
    if (next_beta == 0.0) return 0.0;
    const int q = 16;
    double acc = 0.0;
    for (int i = 0; i < q; ++i) {
      acc += last_component(dt * (i + 0.5) / q);
    }
    return next_beta * std::abs(dt) * acc / q;
  }
};

}  // namespace

StateVector evolve_krylov(const StateVector& state, const PauliSum& h,
                          double t, const EvolverConfig& cfg) {
  if (h.n_qubits() != state.n_qubits) {
    throw std::invalid_argument("evolve_krylov register mismatch");
  }
  if (!std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite");
  }
  if (t == 0.0 || h.empty()) return state;
  if (cfg.tolerance <= 0.0 || cfg.max_krylov_dim < 2) {
    throw std::invalid_argument("invalid evolver configuration");
  }

  const double total = std::abs(t);
  const double dir = t < 0 ? -1.0 : 1.0;
  // Start with a step sized so the Krylov space can plausibly converge.
  const double hnorm = std::max(h.one_norm(), 1e-30);
  double dt = std::min(total, 0.5 * cfg.max_krylov_dim / hnorm);

  StateVector cur = state;
  double done = 0.0;
  long steps = 0;
  double last_residual = 0.0;
  while (done < total * (1.0 - 1e-15)) {
    dt = std::min(dt, total - done);
    const double norm0 = cur.norm();
    LanczosBasis lb = lanczos(cur, h, cfg.max_krylov_dim);
    SmallExp se(lb);
    // Shrink the substep until the residual estimate fits its share of the
    // error budget.
    for (;;) {
      const double budget = cfg.tolerance * dt / total;
      last_residual = lb.invariant ? 0.0 : se.residual(dt, lb.next_beta);
      if (last_residual <= budget || lb.invariant) break;
      dt *= 0.5;
      if (++steps > cfg.max_substeps) {
        throw EvolutionError("Krylov evolution failed to converge",
                             last_residual);
      }
    }
    const VectorXcd u = se.u(dir * dt);
    StateVector next(cur.n_qubits);
    auto nm = map_of(next);
    for (std::size_t i = 0; i < lb.v.size(); ++i) {
      nm += (norm0 * u[static_cast<Eigen::Index>(i)]) * map_of(lb.v[i]);
    }
    cur = std::move(next);
    done += dt;
    dt *= 2.0;  // try growing again
    if (++steps > cfg.max_substeps) {
      throw EvolutionError("Krylov evolution exceeded the substep cap",
                           last_residual);
    }
  }
  return cur;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t(1) << h.n_qubits();
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    const PauliString& p = term.str;
    static const complexd itab[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const complexd c = term.coeff * itab[std::popcount(p.x_mask & p.z_mask) & 3];
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & p.z_mask) & 1) ? -1.0 : 1.0;
      m(b ^ p.x_mask, b) += c * sign;
    }
  }
  return m;
}

StateVector evolve_dense(const StateVector& state, const PauliSum& h,
                         double t) {
  if (h.n_qubits() != state.n_qubits) {
    throw std::invalid_argument("evolve_dense register mismatch");
  }
  if (h.n_qubits() > 10) {
    throw ResourceLimitError("evolve_dense is guarded at 10 qubits");
  }
  if (t == 0.0 || h.empty()) return state;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(dense_matrix(h));
  const VectorXcd coeffs = eig.eigenvectors().adjoint() * map_of(state);
  VectorXcd phased(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    phased[k] = std::exp(complexd(0.0, -t * eig.eigenvalues()[k])) * coeffs[k];
  }
  StateVector out(state.n_qubits);
  map_of(out) = eig.eigenvectors() * phased;
  return out;
}

namespace {

class KrylovPropagator : public Propagator {
 public:
  KrylovPropagator(PauliSum h, EvolverConfig cfg)
      : h_(std::move(h)), cfg_(cfg) {}
  void advance(StateVector& psi, double t0, double t1) const override {
    if (t1 != t0) psi = evolve_krylov(psi, h_, t1 - t0, cfg_);
  }

 private:
  PauliSum h_;
  EvolverConfig cfg_;
};

// Frame = eigenbasis of H. Evolution is a diagonal phase multiply; jump
// operators become cached dense matrices. prepare_pauli must be called for
// every operator that will be applied concurrently (the cache is read-only
// afterwards).
class DensePropagator : public Propagator {
 public:
  explicit DensePropagator(const PauliSum& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(dense_matrix(h));
    basis_ = eig.eigenvectors();
    adjoint_ = basis_.adjoint();
    energies_ = eig.eigenvalues();
  }

  void advance(StateVector& psi, double t0, double t1) const override {
    to_frame(psi);
    advance_in_frame(psi, t0, t1);
    from_frame(psi);
  }

  void to_frame(StateVector& psi) const override {
    scratch_product(adjoint_, psi);
  }
  void from_frame(StateVector& psi) const override {
    scratch_product(basis_, psi);
  }

  void advance_in_frame(StateVector& psi, double t0,
                        double t1) const override {
    const double dt = t1 - t0;
    if (dt == 0.0) return;
    for (Eigen::Index k = 0; k < energies_.size(); ++k) {
      psi.amps[k] *= std::exp(complexd(0.0, -dt * energies_[k]));
    }
  }

  void apply_pauli_in_frame(StateVector& psi,
                            const PauliString& p) const override {
    auto it = framed_paulis_.find({p.x_mask, p.z_mask});
    if (it == framed_paulis_.end()) {
      Propagator::apply_pauli_in_frame(psi, p);
      return;
    }
    scratch_product(it->second, psi);
  }

  void prepare_pauli(const PauliString& p) const override {
    const auto key = std::pair{p.x_mask, p.z_mask};
    if (framed_paulis_.count(key)) return;
    // U^dag P U, built by applying P to the basis columns.
    MatrixXcd dense(basis_.rows(), basis_.cols());
    StateVector tmp;
    tmp.n_qubits = p.n_qubits;
    tmp.amps.resize(basis_.rows());
    for (Eigen::Index c = 0; c < basis_.cols(); ++c) {
      Eigen::Map<VectorXcd>(tmp.amps.data(), basis_.rows()) = basis_.col(c);
      apply_pauli_inplace(tmp, p);
      dense.col(c) =
          Eigen::Map<const VectorXcd>(tmp.amps.data(), basis_.rows());
    }
    framed_paulis_[key] = adjoint_ * dense;
  }

 private:
  void scratch_product(const MatrixXcd& m, StateVector& psi) const {
    static thread_local std::vector<complexd> scratch;
    if (scratch.size() < psi.dim()) scratch.resize(psi.dim());
    Eigen::Map<VectorXcd> v(psi.amps.data(),
                            static_cast<Eigen::Index>(psi.dim()));
    Eigen::Map<VectorXcd> out(scratch.data(),
                              static_cast<Eigen::Index>(psi.dim()));
    out.noalias() = m * v;
    v = out;
  }

  MatrixXcd basis_;    // columns are eigenvectors (frame -> computational)
  MatrixXcd adjoint_;  // computational -> frame
  VectorXd energies_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, MatrixXcd>
      framed_paulis_;
};

// H = 0: nothing evolves.
class IdlePropagator : public Propagator {
 public:
  void advance(StateVector&, double, double) const override {}
  void advance_in_frame(StateVector&, double, double) const override {}
  void apply_pauli_in_frame(StateVector& psi,
                            const PauliString& p) const override {
    apply_pauli_inplace(psi, p);
  }
};

}  // namespace

std::unique_ptr<Propagator> KrylovEvolver::prepare(const PauliSum& h) const {
  if (h.empty()) return std::make_unique<IdlePropagator>();
  return std::make_unique<KrylovPropagator>(h, cfg_);
}

std::unique_ptr<Propagator> SpectralCacheEvolver::prepare(
    const PauliSum& h) const {
  if (h.empty()) return std::make_unique<IdlePropagator>();
  if (h.n_qubits() <= dense_cutoff_) {
    return std::make_unique<DensePropagator>(h);
  }
  return std::make_unique<KrylovPropagator>(h, cfg_);
}

}  // namespace pqs
