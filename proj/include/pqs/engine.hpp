#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pqs/evolve.hpp"
#include "pqs/models.hpp"

namespace pqs {

/// The quasiprobability split of the interaction propagator into identity
/// plus left/right Pauli multiplications. A jump draws term j with
/// probability |lambda_j| / lambda_total and a side with probability 1/2;
/// the ket side carries phase -i*sign(lambda_j), the bra side +i*sign.
struct ExplicitDecomposition {
  std::vector<InteractionTerm> terms;
  double lambda_total = 0.0;        // sum_j |lambda_j|
  double rate = 0.0;                // alpha = 2 * lambda_total
  std::vector<double> term_probs;   // |lambda_j| / lambda_total

  double overhead(double t) const { return std::exp(rate * t); }
};

ExplicitDecomposition decompose(const PartitionedSystem& system);

/// sum_{n<=k} x^n / n!  (the truncated exponential series; the sampling
/// overhead of order-k mode is this evaluated at alpha*T).
double truncated_exp_series(double x, int k);

enum class Side : std::uint8_t { Ket, Bra };

struct Jump {
  double time = 0.0;
  int term = 0;
  Side side = Side::Ket;
};

struct Trajectory {
  std::vector<Jump> jumps;  // times strictly increasing, within (0, horizon)
  double horizon = 0.0;
};

/// Uniform variates with a fixed draw order (time, term, side per jump);
/// every trajectory owns one stream derived from (seed, trajectory index),
/// which keeps results bit-identical across worker counts. Virtual so tests
/// can inject fixed draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}
  virtual ~RandomStream() = default;
  /// Uniform in [0, 1).
  virtual double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1].
  double u_pos() { return 1.0 - u01(); }

 private:
  std::mt19937_64 gen_;
};

RandomStream trajectory_stream(std::uint64_t seed, std::uint64_t index);

/// Exponential jump times at rate alpha until the horizon. When max_jumps is
/// set, draws beyond the cap are discarded and the trajectory continues
/// jump-free (a biased truncation; order-k mode is the unbiased alternative).
Trajectory sample_trajectory(const ExplicitDecomposition& decomp,
                             double horizon, RandomStream& rng,
                             std::optional<long> max_jumps = {});

/// Order-k mode: jump count from the truncated series weights, jump times
/// uniform and ordered on (0, horizon).
Trajectory sample_dyson_trajectory(const ExplicitDecomposition& decomp,
                                   double horizon, int order,
                                   RandomStream& rng);

struct SamplerMode {
  enum Kind { Stochastic, Dyson };
  Kind kind = Stochastic;
  std::optional<long> max_jumps;  // stochastic truncation, off by default
  int dyson_order = 0;

  static SamplerMode stochastic(std::optional<long> cap = {}) {
    return {Stochastic, cap, 0};
  }
  static SamplerMode dyson(int order) { return {Dyson, {}, order}; }
};

/// Ket- and bra-branch statevectors, one pair per subsystem.
struct BranchPair {
  std::vector<StateVector> ket;
  std::vector<StateVector> bra;
};

struct TrajectoryOutcome {
  /// contributions[obs][grid point]; phase and the overhead weight are
  /// already folded in.
  std::vector<std::vector<complexd>> contributions;
  /// Branch states at the horizon, computational basis.
  BranchPair branches;
  complexd phase = 1.0;
  double max_norm_drift = 0.0;
};

/// Evolve one sampled trajectory. Between events every branch advances under
/// its subsystem propagator; at jumps the chosen term's factors hit the
/// designated side; at each grid time t every observable term contributes
/// phase * weight(t) * coeff * prod_l <b_l|O_l|a_l>, where an identity factor
/// still contributes the branch overlap <b_l|a_l>.
TrajectoryOutcome run_trajectory(
    const PartitionedSystem& system, const ExplicitDecomposition& decomp,
    const Trajectory& traj, const std::vector<StateVector>& initial,
    const std::vector<ObservableSum>& observables,
    const std::vector<double>& grid,
    const std::vector<const Propagator*>& propagators,
    const SamplerMode& mode = SamplerMode::stochastic());

struct EstimatorResult {
  std::string observable;
  double time = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double imag_diagnostic = 0.0;  // |mean of imaginary parts|
  double imag_std_error = 0.0;
  double overhead = 0.0;
  long n_samples = 0;
};

struct EstimateOptions {
  double horizon = 0.0;
  std::vector<double> grid;  // ascending, last <= horizon
  long n_samples = 0;
  std::uint64_t seed = 0;
  SamplerMode mode = SamplerMode::stochastic();
  int threads = 1;
};

/// Monte Carlo estimate of every observable at every grid time. Results are
/// bit-identical for a fixed (seed, n_samples) regardless of thread count:
/// trajectories aggregate into fixed-size index blocks that reduce in order.
std::vector<EstimatorResult> estimate(const PartitionedSystem& system,
                                      const std::vector<StateVector>& initial,
                                      const std::vector<ObservableSum>& observables,
                                      const EstimateOptions& options,
                                      const Evolver& evolver);

/// Tr[rho_m(T)^2] from pairs of independent trajectories; the crossed
/// overlaps on subsystem m realize the second moment.
EstimatorResult estimate_purity(const PartitionedSystem& system,
                                const std::vector<StateVector>& initial,
                                int subsystem, double horizon, long n_pairs,
                                std::uint64_t seed, const Evolver& evolver,
                                int threads = 1);

}  // namespace pqs
