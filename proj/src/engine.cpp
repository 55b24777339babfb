#include "pqs/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

int pick_term(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(probs.size()) - 1;
}

double snapshot_weight(const SamplerMode& mode, double rate, double horizon,
                       double t, int jumps_so_far) {
  if (mode.kind == SamplerMode::Stochastic) return std::exp(rate * t);
  const double full = truncated_exp_series(rate * horizon, mode.dyson_order);
  const double rest = truncated_exp_series(rate * (horizon - t),
                                           mode.dyson_order - jumps_so_far);
  return full / rest;
}

}  // namespace

double truncated_exp_series(double x, int k) {
  double term = 1.0, sum = 1.0;
  for (int n = 1; n <= k; ++n) {
    term *= x / n;
    sum += term;
  }
  return sum;
}

ExplicitDecomposition decompose(const PartitionedSystem& system) {
  ExplicitDecomposition d;
  d.terms = system.interactions;
  for (const auto& term : d.terms) {
    if (term.lambda == 0.0) {
      throw std::invalid_argument("interaction term with zero amplitude");
    }
    if (static_cast<int>(term.factors.size()) != system.n_subsystems()) {
      throw std::invalid_argument("interaction factors do not match partition");
    }
    d.lambda_total += std::abs(term.lambda);
  }
  d.rate = 2.0 * d.lambda_total;
  d.term_probs.reserve(d.terms.size());
  for (const auto& term : d.terms) {
    d.term_probs.push_back(std::abs(term.lambda) / d.lambda_total);
  }
  return d;
}

RandomStream trajectory_stream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1)));
}

Trajectory sample_trajectory(const ExplicitDecomposition& decomp,
                             double horizon, RandomStream& rng,
                             std::optional<long> max_jumps) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  Trajectory traj;
  traj.horizon = horizon;
  if (decomp.rate == 0.0 || horizon == 0.0) return traj;
  double t = 0.0;
  for (;;) {
    t += -std::log(rng.u_pos()) / decomp.rate;
    if (t >= horizon) break;
    if (max_jumps && static_cast<long>(traj.jumps.size()) >= *max_jumps) {
      // Jumps beyond the cap are discarded; free evolution continues.
      break;
    }
    const int term = pick_term(decomp.term_probs, rng.u01());
    const Side side = rng.u01() < 0.5 ? Side::Ket : Side::Bra;
    traj.jumps.push_back({t, term, side});
  }
  return traj;
}

Trajectory sample_dyson_trajectory(const ExplicitDecomposition& decomp,
                                   double horizon, int order,
                                   RandomStream& rng) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  Trajectory traj;
  traj.horizon = horizon;
  const double x = decomp.rate * horizon;
  if (x == 0.0) return traj;
  const double total = truncated_exp_series(x, order);
  // Jump count n with weight x^n / n!, truncated at the order.
  const double u = rng.u01() * total;
  int count = 0;
  double acc = 1.0, term = 1.0;
  while (count < order && u >= acc) {
    ++count;
    term *= x / count;
    acc += term;
  }
  std::vector<double> times(count);
  for (int i = 0; i < count; ++i) times[i] = rng.u01() * horizon;
  std::sort(times.begin(), times.end());
  for (int i = 0; i < count; ++i) {
    const int t = pick_term(decomp.term_probs, rng.u01());
    const Side side = rng.u01() < 0.5 ? Side::Ket : Side::Bra;
    traj.jumps.push_back({times[i], t, side});
  }
  return traj;
}

namespace {

// Reused per-thread branch/workspace buffers; trajectories on one worker
// share allocations.
struct Workspace {
  std::vector<StateVector> ket, bra;        // propagator frame
  std::vector<StateVector> ket_cb, bra_cb;  // computational basis snapshots
  std::vector<complexd> overlap;
};

thread_local Workspace tls_workspace;

void run_trajectory_impl(const PartitionedSystem& system,
                         const ExplicitDecomposition& decomp,
                         const Trajectory& traj,
                         const std::vector<StateVector>& initial,
                         const std::vector<ObservableSum>& observables,
                         const std::vector<double>& grid,
                         const std::vector<const Propagator*>& props,
                         const SamplerMode& mode, bool want_branches,
                         TrajectoryOutcome& out) {
  const int L = system.n_subsystems();
  if (static_cast<int>(initial.size()) != L ||
      static_cast<int>(props.size()) != L) {
    throw std::invalid_argument("initial states do not match the partition");
  }
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (grid[g] <= grid[g - 1]) {
      throw std::invalid_argument("grid times must be ascending");
    }
  }
  if (!grid.empty() && grid.back() > traj.horizon + 1e-12) {
    throw std::invalid_argument("grid extends past the horizon");
  }

  Workspace& ws = tls_workspace;
  ws.ket.assign(initial.begin(), initial.end());
  for (int l = 0; l < L; ++l) props[l]->to_frame(ws.ket[l]);
  ws.bra.clear();
  bool split = false;  // bra branch materializes at the first jump

  out.contributions.resize(observables.size());
  for (auto& row : out.contributions) row.assign(grid.size(), complexd(0));
  out.phase = complexd(1.0, 0.0);
  out.max_norm_drift = 0.0;

  std::size_t next_jump = 0, next_grid = 0;
  int jumps_applied = 0;
  double now = 0.0;

  auto advance_to = [&](double t_new) {
    if (t_new == now) return;
    for (int l = 0; l < L; ++l) {
      props[l]->advance_in_frame(ws.ket[l], now, t_new);
      if (split) props[l]->advance_in_frame(ws.bra[l], now, t_new);
    }
    now = t_new;
  };

  while (next_jump < traj.jumps.size() || next_grid < grid.size()) {
    const bool take_grid =
        next_grid < grid.size() &&
        (next_jump >= traj.jumps.size() ||
         grid[next_grid] <= traj.jumps[next_jump].time);
    if (take_grid) {
      advance_to(grid[next_grid]);
      const double weight =
          snapshot_weight(mode, decomp.rate, traj.horizon, now, jumps_applied);
      ws.ket_cb.assign(ws.ket.begin(), ws.ket.end());
      for (int l = 0; l < L; ++l) props[l]->from_frame(ws.ket_cb[l]);
      if (split) {
        ws.bra_cb.assign(ws.bra.begin(), ws.bra.end());
        for (int l = 0; l < L; ++l) props[l]->from_frame(ws.bra_cb[l]);
      }
      const std::vector<StateVector>& bra_cb = split ? ws.bra_cb : ws.ket_cb;

      ws.overlap.assign(L, complexd(0));
      std::vector<complexd>& overlap = ws.overlap;
      for (int l = 0; l < L; ++l) {
        overlap[l] = inner(bra_cb[l], ws.ket_cb[l]);
        out.max_norm_drift = std::max(out.max_norm_drift,
                                      std::abs(ws.ket_cb[l].norm() - 1.0));
        if (split) {
          out.max_norm_drift = std::max(out.max_norm_drift,
                                        std::abs(bra_cb[l].norm() - 1.0));
        }
      }
      for (std::size_t o = 0; o < observables.size(); ++o) {
        complexd value = 0.0;
        for (const auto& term : observables[o].terms) {
          complexd prod = term.coeff;
          for (int l = 0; l < L; ++l) {
            if (std::holds_alternative<IdentityOp>(term.local_ops[l])) {
              prod *= overlap[l];
            } else {
              prod *= bilinear(bra_cb[l], term.local_ops[l], ws.ket_cb[l]);
            }
          }
          value += prod;
        }
        out.contributions[o][next_grid] = out.phase * weight * value;
      }
      ++next_grid;
    } else {
      const Jump& jump = traj.jumps[next_jump];
      advance_to(jump.time);
      if (!split) {
        ws.bra.assign(ws.ket.begin(), ws.ket.end());
        split = true;
      }
      const InteractionTerm& term = decomp.terms[jump.term];
      for (int l = 0; l < L; ++l) {
        if (term.factors[l].is_identity()) continue;
        StateVector& target =
            jump.side == Side::Ket ? ws.ket[l] : ws.bra[l];
        props[l]->apply_pauli_in_frame(target, term.factors[l]);
      }
      const double sgn = term.lambda > 0 ? 1.0 : -1.0;
      out.phase *= complexd(0.0, jump.side == Side::Ket ? -sgn : sgn);
      ++jumps_applied;
      ++next_jump;
    }
  }

  if (want_branches) {
    advance_to(traj.horizon);
    out.branches.ket.assign(ws.ket.begin(), ws.ket.end());
    out.branches.bra.assign(split ? ws.bra.begin() : ws.ket.begin(),
                            split ? ws.bra.end() : ws.ket.end());
    for (int l = 0; l < L; ++l) {
      props[l]->from_frame(out.branches.ket[l]);
      props[l]->from_frame(out.branches.bra[l]);
      out.max_norm_drift =
          std::max(out.max_norm_drift,
                   std::abs(out.branches.ket[l].norm() - 1.0));
    }
  } else {
    out.branches.ket.clear();
    out.branches.bra.clear();
  }
}

std::vector<const Propagator*> raw_pointers(
    const std::vector<std::unique_ptr<Propagator>>& owned) {
  std::vector<const Propagator*> out;
  out.reserve(owned.size());
  for (const auto& p : owned) out.push_back(p.get());
  return out;
}

std::vector<std::unique_ptr<Propagator>> prepare_propagators(
    const PartitionedSystem& system, const Evolver& evolver) {
  std::vector<std::unique_ptr<Propagator>> props;
  props.reserve(system.n_subsystems());
  for (int l = 0; l < system.n_subsystems(); ++l) {
    props.push_back(evolver.prepare(system.local_hams[l]));
  }
  // Warm jump-operator caches before any concurrent use.
  for (const auto& term : system.interactions) {
    for (int l = 0; l < system.n_subsystems(); ++l) {
      if (!term.factors[l].is_identity()) {
        props[l]->prepare_pauli(term.factors[l]);
      }
    }
  }
  return props;
}

constexpr long kBlockSize = 256;

/// Runs body(i) over [0, count) on `threads` workers in fixed index blocks;
/// block-local accumulators keep reductions deterministic.
void parallel_blocks(long count, int threads,
                     const std::function<void(long, long)>& block_body) {
  const long n_blocks = (count + kBlockSize - 1) / kBlockSize;
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const long b = next.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        block_body(b * kBlockSize, std::min(count, (b + 1) * kBlockSize));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const int n_workers = std::max(1, threads);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

// Per-block Welford moments merged in block-index order: bit-identical at
// any worker count, and identical samples yield an exactly zero variance.
struct SlotAccumulator {
  struct Moments {
    double n = 0, mean_re = 0, m2_re = 0, mean_im = 0, m2_im = 0;
  };

  std::vector<double> data;  // per block: count, then 4 doubles per slot
  long n_blocks = 0;
  std::size_t n_slots = 0;

  SlotAccumulator(long count, std::size_t slots)
      : n_blocks((count + kBlockSize - 1) / kBlockSize), n_slots(slots) {
    data.assign(static_cast<std::size_t>(n_blocks) * stride(), 0.0);
  }
  std::size_t stride() const { return 1 + 4 * n_slots; }
  double* block(long first_index) {
    return data.data() +
           static_cast<std::size_t>(first_index / kBlockSize) * stride();
  }
  // One trajectory's contributions, one value per slot.
  void add(double* blk, const complexd* values) {
    const double n = ++blk[0];
    for (std::size_t s = 0; s < n_slots; ++s) {
      double* d = blk + 1 + 4 * s;
      const double dre = values[s].real() - d[0];
      d[0] += dre / n;
      d[1] += dre * (values[s].real() - d[0]);
      const double dim = values[s].imag() - d[2];
      d[2] += dim / n;
      d[3] += dim * (values[s].imag() - d[2]);
    }
  }
  std::vector<Moments> totals() const {
    std::vector<Moments> out(n_slots);
    for (long b = 0; b < n_blocks; ++b) {
      const double* blk = data.data() + static_cast<std::size_t>(b) * stride();
      const double nb = blk[0];
      if (nb == 0) continue;
      for (std::size_t s = 0; s < n_slots; ++s) {
        const double* d = blk + 1 + 4 * s;
        Moments& m = out[s];
        const double total = m.n + nb;
        const double dre = d[0] - m.mean_re;
        m.m2_re += d[1] + dre * dre * m.n * nb / total;
        m.mean_re += dre * nb / total;
        const double dim = d[2] - m.mean_im;
        m.m2_im += d[3] + dim * dim * m.n * nb / total;
        m.mean_im += dim * nb / total;
        m.n = total;
      }
    }
    return out;
  }
};

EstimatorResult make_result(const SlotAccumulator::Moments& m, long n) {
  EstimatorResult r;
  r.n_samples = n;
  r.mean = m.mean_re;
  r.imag_diagnostic = std::abs(m.mean_im);
  if (n > 1) {
    r.std_error = std::sqrt(std::max(0.0, m.m2_re / (n - 1)) / n);
    r.imag_std_error = std::sqrt(std::max(0.0, m.m2_im / (n - 1)) / n);
  }
  return r;
}

}  // namespace

TrajectoryOutcome run_trajectory(const PartitionedSystem& system,
                                 const ExplicitDecomposition& decomp,
                                 const Trajectory& traj,
                                 const std::vector<StateVector>& initial,
                                 const std::vector<ObservableSum>& observables,
                                 const std::vector<double>& grid,
                                 const std::vector<const Propagator*>& props,
                                 const SamplerMode& mode) {
  TrajectoryOutcome out;
  run_trajectory_impl(system, decomp, traj, initial, observables, grid, props,
                      mode, /*want_branches=*/true, out);
  return out;
}

std::vector<EstimatorResult> estimate(
    const PartitionedSystem& system, const std::vector<StateVector>& initial,
    const std::vector<ObservableSum>& observables,
    const EstimateOptions& options, const Evolver& evolver) {
  if (options.n_samples < 2) {
    throw std::invalid_argument("n_samples must be at least 2");
  }
  if (options.mode.kind == SamplerMode::Dyson && options.mode.dyson_order < 0) {
    throw std::invalid_argument("dyson order must be non-negative");
  }
  if (options.mode.kind == SamplerMode::Stochastic && options.mode.max_jumps &&
      *options.mode.max_jumps < 0) {
    throw std::invalid_argument("max_jumps must be non-negative");
  }
  const ExplicitDecomposition decomp = decompose(system);
  const auto owned = prepare_propagators(system, evolver);
  const auto props = raw_pointers(owned);

  const std::size_t n_slots = observables.size() * options.grid.size();
  SlotAccumulator acc(options.n_samples, n_slots);

  parallel_blocks(options.n_samples, options.threads, [&](long lo, long hi) {
    TrajectoryOutcome outcome;
    std::vector<complexd> flat(n_slots);
    double* blk = acc.block(lo);
    for (long i = lo; i < hi; ++i) {
      RandomStream rng = trajectory_stream(options.seed, i);
      const Trajectory traj =
          options.mode.kind == SamplerMode::Stochastic
              ? sample_trajectory(decomp, options.horizon, rng,
                                  options.mode.max_jumps)
              : sample_dyson_trajectory(decomp, options.horizon,
                                        options.mode.dyson_order, rng);
      run_trajectory_impl(system, decomp, traj, initial, observables,
                          options.grid, props, options.mode,
                          /*want_branches=*/false, outcome);
      std::size_t slot = 0;
      for (std::size_t o = 0; o < observables.size(); ++o) {
        for (std::size_t g = 0; g < options.grid.size(); ++g) {
          flat[slot++] = outcome.contributions[o][g];
        }
      }
      acc.add(blk, flat.data());
    }
  });

  const auto totals = acc.totals();
  std::vector<EstimatorResult> results;
  results.reserve(n_slots);
  std::size_t slot = 0;
  for (std::size_t o = 0; o < observables.size(); ++o) {
    for (std::size_t g = 0; g < options.grid.size(); ++g) {
      EstimatorResult r = make_result(totals[slot++], options.n_samples);
      r.observable = observables[o].name;
      r.time = options.grid[g];
      r.overhead =
          options.mode.kind == SamplerMode::Stochastic
              ? decomp.overhead(options.grid[g])
              : truncated_exp_series(decomp.rate * options.horizon,
                                     options.mode.dyson_order);
      results.push_back(std::move(r));
    }
  }
  return results;
}

EstimatorResult estimate_purity(const PartitionedSystem& system,
                                const std::vector<StateVector>& initial,
                                int subsystem, double horizon, long n_pairs,
                                std::uint64_t seed, const Evolver& evolver,
                                int threads) {
  if (subsystem < 0 || subsystem >= system.n_subsystems()) {
    throw std::invalid_argument("subsystem index out of range");
  }
  if (n_pairs < 2) throw std::invalid_argument("n_pairs must be at least 2");
  const ExplicitDecomposition decomp = decompose(system);
  const auto owned = prepare_propagators(system, evolver);
  const auto props = raw_pointers(owned);
  const double weight = std::exp(2.0 * decomp.rate * horizon);
  const SamplerMode mode = SamplerMode::stochastic();

  SlotAccumulator acc(n_pairs, 1);
  parallel_blocks(n_pairs, threads, [&](long lo, long hi) {
    TrajectoryOutcome a, b;
    double* blk = acc.block(lo);
    for (long i = lo; i < hi; ++i) {
      RandomStream rng_a = trajectory_stream(seed, 2 * i);
      RandomStream rng_b = trajectory_stream(seed, 2 * i + 1);
      const Trajectory ta = sample_trajectory(decomp, horizon, rng_a);
      const Trajectory tb = sample_trajectory(decomp, horizon, rng_b);
      run_trajectory_impl(system, decomp, ta, initial, {}, {}, props, mode,
                          /*want_branches=*/true, a);
      run_trajectory_impl(system, decomp, tb, initial, {}, {}, props, mode,
                          /*want_branches=*/true, b);
      complexd value = weight * a.phase * b.phase;
      for (int l = 0; l < system.n_subsystems(); ++l) {
        if (l == subsystem) {
          value *= inner(a.branches.bra[l], b.branches.ket[l]) *
                   inner(b.branches.bra[l], a.branches.ket[l]);
        } else {
          value *= inner(a.branches.bra[l], a.branches.ket[l]) *
                   inner(b.branches.bra[l], b.branches.ket[l]);
        }
      }
      acc.add(blk, &value);
    }
  });

  EstimatorResult r = make_result(acc.totals()[0], n_pairs);
  r.observable = "purity_" + std::to_string(subsystem);
  r.time = horizon;
  r.overhead = weight;
  return r;
}

}  // namespace pqs
