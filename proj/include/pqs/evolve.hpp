#pragma once

#include <Eigen/Dense>
#include <memory>

#include "pqs/pauli.hpp"

namespace pqs {

struct EvolverConfig {
  /// 2-norm error budget per evolution call.
  double tolerance = 1e-10;
  int max_krylov_dim = 30;
  /// Safety cap on adaptive substeps before giving up.
  long max_substeps = 1'000'000;
};

/// exp(-iHt)|psi> via Lanczos subspace exponentiation with adaptive time
/// splitting. Negative t evolves backwards. Throws EvolutionError when the
/// residual estimate cannot be brought under tolerance within max_substeps.
StateVector evolve_krylov(const StateVector& state, const PauliSum& h,
                          double t, const EvolverConfig& cfg = {});

/// exp(-iHt)|psi> by full diagonalization; test oracle, guarded at 10 qubits.
StateVector evolve_dense(const StateVector& state, const PauliSum& h,
                         double t);

/// Dense matrix of a PauliSum (no guard; caller controls the size).
Eigen::MatrixXcd dense_matrix(const PauliSum& h);

/// Advances states under one fixed Hamiltonian. Implementations may hold
/// states in an internal frame (e.g. the eigenbasis) between events as long
/// as to_frame/from_frame convert to and from the computational basis.
class Propagator {
 public:
  virtual ~Propagator() = default;
  /// Computational-basis advance from t0 to t1.
  virtual void advance(StateVector& psi, double t0, double t1) const = 0;

  virtual void to_frame(StateVector&) const {}
  virtual void from_frame(StateVector&) const {}
  virtual void advance_in_frame(StateVector& psi, double t0, double t1) const {
    from_frame(psi);
    advance(psi, t0, t1);
    to_frame(psi);
  }
  /// Apply a Pauli unitary to a state held in the internal frame.
  virtual void apply_pauli_in_frame(StateVector& psi,
                                    const PauliString& p) const {
    from_frame(psi);
    apply_pauli_inplace(psi, p);
    to_frame(psi);
  }
  /// Hook for precomputing frame representations of jump operators before
  /// concurrent use; default does nothing.
  virtual void prepare_pauli(const PauliString&) const {}
};

class Evolver {
 public:
  virtual ~Evolver() = default;
  virtual std::unique_ptr<Propagator> prepare(const PauliSum& h) const = 0;
};

/// Matrix-free Krylov propagation; works at any register size.
class KrylovEvolver : public Evolver {
 public:
  explicit KrylovEvolver(EvolverConfig cfg = {}) : cfg_(cfg) {}
  std::unique_ptr<Propagator> prepare(const PauliSum& h) const override;

 private:
  EvolverConfig cfg_;
};

/// Caches a one-time eigendecomposition for registers up to dense_cutoff
/// qubits (evolution then costs two matrix-vector products per call and jump
/// operators one); falls back to Krylov above the cutoff.
class SpectralCacheEvolver : public Evolver {
 public:
  explicit SpectralCacheEvolver(EvolverConfig cfg = {}, int dense_cutoff = 10)
      : cfg_(cfg), dense_cutoff_(dense_cutoff) {}
  std::unique_ptr<Propagator> prepare(const PauliSum& h) const override;

 private:
  EvolverConfig cfg_;
  int dense_cutoff_;
};

}  // namespace pqs
