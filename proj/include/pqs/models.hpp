#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pqs/evolve.hpp"
#include "pqs/pauli.hpp"

namespace pqs {

/// One perturbative coupling: lambda * (factor_1 x ... x factor_L) with one
/// Pauli string per subsystem (identity on uninvolved subsystems). At least
/// two factors are non-identity.
struct InteractionTerm {
  double lambda = 0.0;
  std::vector<PauliString> factors;

  int support_size() const;
};

/// Register layout plus the split Hamiltonian: per-subsystem local terms and
/// the cross-subsystem couplings.
struct PartitionedSystem {
  std::vector<int> subsystem_sizes;
  std::vector<PauliSum> local_hams;        // local qubit indices
  std::vector<InteractionTerm> interactions;
  std::vector<std::pair<int, int>> global_to_local;  // global -> (sub, local)
  double dropped_constant = 0.0;  // identity weight removed during the split
  std::vector<std::string> notes;

  int n_subsystems() const { return static_cast<int>(subsystem_sizes.size()); }
  int total_qubits() const;
  int subsystem_offset(int l) const;
};

/// Sum of products of per-subsystem operators. Each term contributes
/// coeff * prod_l <.|O_l|.> when evaluated on branch pairs.
struct ObservableTerm {
  double coeff = 0.0;
  std::vector<LocalOp> local_ops;  // one per subsystem
};

struct ObservableSum {
  std::string name;
  std::vector<ObservableTerm> terms;
};

// --- model specifications -------------------------------------------------

/// Nearest-neighbour Ising chain in a transverse field:
/// H = J sum_i Z_i Z_{i+1} + h sum_i X_i. When trotter_steps is set, local
/// evolution uses first-order steps of dt = T/steps (ZZ layer then X layer)
/// instead of the exact propagator.
struct TfimSpec {
  int n = 0;
  double j = 1.0;
  double h = 0.0;
  std::optional<int> trotter_steps;
};

/// Two clusters of n/2 sites with intra-cluster couplings
/// J_ij = j0 * |i-j|^{-alpha} on X X plus a transverse field h on Z; the
/// clusters touch through one X X bond of strength j0.
struct PowerLawIsingSpec {
  int n = 0;
  double j0 = 1.0;
  double alpha = 1.0;
  double h = 0.0;
};

/// Hard-core boson chain mapped to spins:
/// H = J sum_i (X_i X_{i+1} + Y_i Y_{i+1}) + (1/2) sum_i h_i (I - Z_i).
/// The middle bond (n/2-1, n/2) carries j_boundary instead of J.
struct XXChainSpec {
  int n = 0;
  double j = 0.0;
  double j_boundary = 0.0;
  std::vector<double> onsite;  // h_i, defaults to zeros
};

/// One-dimensional Fermi-Hubbard chain of `sites` sites. Potentials default
/// to a Gaussian well on the spin-up sector and zero on spin-down.
struct FermiHubbardSpec {
  int sites = 0;
  double j = 0.0;
  double u = 0.0;
  std::vector<double> h_up;  // empty -> Gaussian default
  std::vector<double> h_dn;  // empty -> zeros
  int n_up = 0;
  int n_dn = 0;
};

/// Chain of `clusters` Ising clusters, J X X + h Z inside each, with X X
/// boundary bonds of strength boundary_couplings[l] between cluster l, l+1.
struct MultiClusterSpec {
  int clusters = 0;
  int cluster_size = 0;
  double j = 1.0;
  double h = 1.0;
  std::vector<double> boundary_couplings;
};

using ModelSpec = std::variant<TfimSpec, PowerLawIsingSpec, XXChainSpec,
                               FermiHubbardSpec, MultiClusterSpec>;

int total_qubits(const ModelSpec& spec);

/// Full-register Hermitian Hamiltonian. For FermiHubbard this is the
/// Jordan-Wigner image with the constant component dropped.
PauliSum build_full(const ModelSpec& spec);

/// Split a full-register Hamiltonian over contiguous subsystems of the given
/// sizes. Pauli strings factor exactly across any cut; terms supported on one
/// subsystem join its local Hamiltonian, cross terms become interactions, and
/// identity-only terms are dropped into dropped_constant with a note.
PartitionedSystem partition_pauli_sum(const PauliSum& full,
                                      const std::vector<int>& cut);
PartitionedSystem partition(const ModelSpec& spec, const std::vector<int>& cut);

struct JordanWignerResult {
  PauliSum full;
  PartitionedSystem partitioned;  // spin cut: up register | down register
  double dropped_constant = 0.0;
};

/// Jordan-Wigner image of the Fermi-Hubbard chain. Qubits 0..L-1 hold the
/// spin-up sites and L..2L-1 the spin-down sites; |0> is an empty site
/// (n -> (I - Z)/2). The partition is the spin cut, whose interactions are
/// the L on-site terms (U/4) Z_up Z_down.
JordanWignerResult jw_fermi_hubbard(const FermiHubbardSpec& spec);

/// Per-sector Slater-determinant ground state of the non-interacting chain
/// (off-diagonal -J, diagonal h). Throws ConfigError when the Fermi level is
/// degenerate within 1e-12.
std::pair<StateVector, StateVector> ground_state_noninteracting(
    const FermiHubbardSpec& spec);

// --- initial states and observables ----------------------------------------

struct AllZeroInit {};
/// X applied at the listed sites; site labels are 1-based chain positions.
struct FlipSitesInit {
  std::vector<int> sites;
};
struct HubbardGroundInit {};
using InitialPreset = std::variant<AllZeroInit, FlipSitesInit, HubbardGroundInit>;

/// Product state across the partition's subsystems.
std::vector<StateVector> build_initial(const ModelSpec& spec,
                                       const PartitionedSystem& system,
                                       const InitialPreset& preset);

/// Expand an observable family into per-subsystem product form. Site labels
/// in names are 1-based. Families:
///   identity          -> the trace check
///   density           -> n_j = (I - Z_j)/2 for every site
///   m_z               -> averaged magnetisation (1/N) sum_j Z_j
///   loschmidt         -> product of per-subsystem |0..0><0..0| projectors
///   c_nn              -> (1/(N-1)) sum_j Z_j Z_{j+1}
///   z:<j>, zz:<i>:<j> -> single Pauli products
///   nn:<i>:<j>        -> density-density n_i n_j
///   charge_density / spin_density -> rho^c_j, rho^s_j (Hubbard)
///   kappa             -> separation speeds kappa_c, kappa_s (Hubbard)
std::vector<ObservableSum> build_observables(const ModelSpec& spec,
                                             const PartitionedSystem& system,
                                             const std::string& which,
                                             const InitialPreset& initial);

/// Embed a per-subsystem Pauli string list into the full register.
PauliString embed_factors(const PartitionedSystem& system,
                          const std::vector<PauliString>& factors);
/// Embed a subsystem-local Pauli sum into the full register.
PauliSum embed_local(const PartitionedSystem& system, int subsystem,
                     const PauliSum& local);

/// First-order layered propagation for TFIM-structured local Hamiltonians
/// (diagonal ZZ part, single-qubit X part) on a fixed global step grid.
class TrotterEvolver : public Evolver {
 public:
  TrotterEvolver(double horizon, int steps);
  std::unique_ptr<Propagator> prepare(const PauliSum& h) const override;

 private:
  double step_;
};

}  // namespace pqs
