#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pqs/engine.hpp"
#include "pqs/evolve.hpp"
#include "pqs/models.hpp"

namespace pqs {

/// Exact full-register reference: expectation of a Pauli sum or basis
/// projector along a time grid. Guarded at 20 qubits.
using FullObservable = std::variant<PauliSum, BasisProjector>;
std::vector<double> oracle_evolve_expect(const PauliSum& full,
                                         const StateVector& initial,
                                         const FullObservable& observable,
                                         const std::vector<double>& grid,
                                         const EvolverConfig& cfg = {});

/// Tensor product of per-subsystem states on the full register.
StateVector product_state(const PartitionedSystem& layout,
                          const std::vector<StateVector>& states);

/// Exact reference values for partitioned observables: out[obs][grid point].
std::vector<std::vector<double>> oracle_series(
    const PauliSum& full, const StateVector& initial,
    const PartitionedSystem& layout,
    const std::vector<ObservableSum>& observables,
    const std::vector<double>& grid, const EvolverConfig& cfg = {});

struct Condition1Report {
  bool satisfied = false;
  std::vector<int> support;      // subsystems the interaction acts on
  int min_factor_weight = 0;     // k: smallest non-identity factor weight
  long term_count = 0;
  double term_count_bound = 0;   // 3^k * C(n, k), n = min size over support
  std::string violation;         // empty when satisfied
};

/// Tracelessness of every factor on the joint support plus pairwise
/// orthogonality of each subsystem's factor strings.
Condition1Report check_condition1(const std::vector<InteractionTerm>& terms,
                                  const std::vector<int>& subsystem_sizes);

struct BoundReport {
  double lower_bound = 0.0;        // max_l trace norm of the reshuffled Choi
  double explicit_cost_rate = 0.0; // 2 sum_j |lambda_j|
  bool condition1 = false;
  std::vector<double> per_subsystem_norms;
};

/// Cost-rate lower bound from the reshuffled Choi representation of
/// rho -> -i(V rho - rho V): for each subsystem the S isomorphism on (l,l')
/// and T on the rest, then the sum of singular values. The tensor structure
/// is contracted through Gram factors, so memory stays small; guarded at a
/// doubled total dimension of 2^20.
BoundReport choi_lower_bound(const std::vector<InteractionTerm>& terms,
                             const std::vector<int>& subsystem_sizes);

/// Sampling overhead of the order-k expansion: sum_{n<=k} (2 T lambda)^n / n!.
double dyson_cost(int k, double lambda_total, double horizon);

/// Error envelope of the order-k truncation, up to its hidden constant:
/// e^{|V| T} (|V| T)^{k+1} / (k+1)!.
double dyson_error_bound(int k, double v_norm, double horizon);

/// Nearest-neighbour light-cone bound: the modified Bessel function I_d(4Jt)
/// by its power series.
double lr_bound_nn(int distance, double coupling, double t);

}  // namespace pqs
