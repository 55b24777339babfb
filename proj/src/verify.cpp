#include "pqs/verify.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

constexpr int kOracleMaxQubits = 20;

void apply_local_op(const PartitionedSystem& layout, int subsystem,
                    const LocalOp& op, StateVector& psi) {
  if (std::holds_alternative<IdentityOp>(op)) return;
  if (const auto* proj = std::get_if<BasisProjector>(&op)) {
    const int off = layout.subsystem_offset(subsystem);
    const int width = layout.subsystem_sizes[subsystem];
    const std::uint64_t mask = (std::uint64_t(1) << width) - 1;
    for (std::uint64_t g = 0; g < psi.dim(); ++g) {
      if (((g >> off) & mask) != proj->basis_index) psi.amps[g] = 0.0;
    }
    return;
  }
  const PauliSum embedded = embed_local(layout, subsystem,
                                        std::get<PauliSum>(op));
  psi = apply_pauli_sum(psi, embedded);
}

}  // namespace

std::vector<double> oracle_evolve_expect(const PauliSum& full,
                                         const StateVector& initial,
                                         const FullObservable& observable,
                                         const std::vector<double>& grid,
                                         const EvolverConfig& cfg) {
  if (full.n_qubits() > kOracleMaxQubits) {
    throw ResourceLimitError("oracle register exceeds " +
                             std::to_string(kOracleMaxQubits) + " qubits");
  }
  StateVector psi = initial;
  std::vector<double> out;
  out.reserve(grid.size());
  double now = 0.0;
  for (double t : grid) {
    if (t < now) throw std::invalid_argument("grid times must be ascending");
    psi = evolve_krylov(psi, full, t - now, cfg);
    now = t;
    const LocalOp op = std::holds_alternative<PauliSum>(observable)
                           ? LocalOp(std::get<PauliSum>(observable))
                           : LocalOp(std::get<BasisProjector>(observable));
    out.push_back(bilinear(psi, op, psi).real());
  }
  return out;
}

StateVector product_state(const PartitionedSystem& layout,
                          const std::vector<StateVector>& states) {
  if (static_cast<int>(states.size()) != layout.n_subsystems()) {
    throw std::invalid_argument("state list does not match the partition");
  }
  StateVector full(layout.total_qubits());
  for (std::uint64_t g = 0; g < full.dim(); ++g) {
    complexd amp = 1.0;
    for (int l = 0; l < layout.n_subsystems(); ++l) {
      const int off = layout.subsystem_offset(l);
      const std::uint64_t mask =
          (std::uint64_t(1) << layout.subsystem_sizes[l]) - 1;
      amp *= states[l].amps[(g >> off) & mask];
      if (amp == complexd(0.0)) break;
    }
    full.amps[g] = amp;
  }
  return full;
}

std::vector<std::vector<double>> oracle_series(
    const PauliSum& full, const StateVector& initial,
    const PartitionedSystem& layout,
    const std::vector<ObservableSum>& observables,
    const std::vector<double>& grid, const EvolverConfig& cfg) {
  if (full.n_qubits() > kOracleMaxQubits) {
    throw ResourceLimitError("oracle register exceeds " +
                             std::to_string(kOracleMaxQubits) + " qubits");
  }
  std::vector<std::vector<double>> out(observables.size(),
                                       std::vector<double>(grid.size(), 0.0));
  StateVector psi = initial;
  double now = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    psi = evolve_krylov(psi, full, grid[g] - now, cfg);
    now = grid[g];
    for (std::size_t o = 0; o < observables.size(); ++o) {
      double value = 0.0;
      for (const auto& term : observables[o].terms) {
        StateVector phi = psi;
        for (int l = 0; l < layout.n_subsystems(); ++l) {
          apply_local_op(layout, l, term.local_ops[l], phi);
        }
        value += term.coeff * inner(psi, phi).real();
      }
      out[o][g] = value;
    }
  }
  return out;
}

Condition1Report check_condition1(const std::vector<InteractionTerm>& terms,
                                  const std::vector<int>& subsystem_sizes) {
  Condition1Report report;
  report.term_count = static_cast<long>(terms.size());
  const int L = static_cast<int>(subsystem_sizes.size());
  std::vector<bool> acted(L, false);
  for (const auto& term : terms) {
    for (int l = 0; l < L; ++l) {
      if (!term.factors[l].is_identity()) acted[l] = true;
    }
  }
  for (int l = 0; l < L; ++l) {
    if (acted[l]) report.support.push_back(l);
  }
  report.satisfied = true;
  // Tracelessness on the whole support set.
  for (std::size_t j = 0; j < terms.size() && report.satisfied; ++j) {
    for (int l : report.support) {
      if (terms[j].factors[l].is_identity()) {
        report.satisfied = false;
        report.violation = "term " + std::to_string(j) +
                           " has an identity factor on subsystem " +
                           std::to_string(l);
        break;
      }
    }
  }
  // Pairwise Hilbert-Schmidt orthogonality per subsystem: identical Pauli
  // strings are the only non-orthogonal pairs.
  for (int l : report.support) {
    for (std::size_t j = 0; j + 1 < terms.size() && report.satisfied; ++j) {
      for (std::size_t k = j + 1; k < terms.size(); ++k) {
        if (terms[j].factors[l] == terms[k].factors[l]) {
          report.satisfied = false;
          report.violation = "terms " + std::to_string(j) + " and " +
                             std::to_string(k) +
                             " share a factor on subsystem " +
                             std::to_string(l);
          break;
        }
      }
    }
  }
  if (!terms.empty() && !report.support.empty()) {
    int k = 64, n_min = 64;
    for (const auto& term : terms) {
      for (int l : report.support) {
        if (!term.factors[l].is_identity()) {
          k = std::min(k, term.factors[l].weight());
        }
      }
    }
    for (int l : report.support) n_min = std::min(n_min, subsystem_sizes[l]);
    report.min_factor_weight = k;
    double binom = 1.0;
    for (int i = 0; i < k; ++i) {
      binom *= double(n_min - i) / double(i + 1);
    }
    report.term_count_bound = std::pow(3.0, k) * binom;
  }
  return report;
}

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// (V x I)|phi> on the doubled register of one subsystem, phi maximally
// entangled; index (i, i') -> i * d + i'.
VectorXcd doubled_vector(const PauliString& p) {
  const std::uint64_t d = std::uint64_t(1) << p.n_qubits;
  VectorXcd u = VectorXcd::Zero(static_cast<Eigen::Index>(d * d));
  static const complexd itab[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const complexd ph = itab[std::popcount(p.x_mask & p.z_mask) & 3];
  const double root = std::sqrt(double(d));
  for (std::uint64_t i = 0; i < d; ++i) {
    const double sign = (std::popcount(i & p.z_mask) & 1) ? -1.0 : 1.0;
    u[static_cast<Eigen::Index>((i ^ p.x_mask) * d + i)] = ph * sign / root;
  }
  return u;
}

// Square root factor of a PSD Gram matrix, tolerating rank deficiency.
MatrixXcd gram_sqrt(const MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(gram);
  Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * vals.asDiagonal();
}

}  // namespace

BoundReport choi_lower_bound(const std::vector<InteractionTerm>& terms,
                             const std::vector<int>& subsystem_sizes) {
  const int L = static_cast<int>(subsystem_sizes.size());
  double doubled_bits = 0;
  for (int s : subsystem_sizes) doubled_bits += 2 * s;
  if (doubled_bits > 20) {
    throw ResourceLimitError(
        "choi_lower_bound guarded at doubled dimension 2^20");
  }

  BoundReport report;
  for (const auto& term : terms) {
    if (static_cast<int>(term.factors.size()) != L) {
      throw std::invalid_argument("interaction factors do not match partition");
    }
    report.explicit_cost_rate += 2.0 * std::abs(term.lambda);
  }
  report.condition1 = check_condition1(terms, subsystem_sizes).satisfied;
  report.per_subsystem_norms.assign(L, 0.0);
  if (terms.empty()) return report;

  const int n_terms = static_cast<int>(terms.size());
  const int cols = 2 * n_terms;  // ket-branch and bra-branch per term

  // Per subsystem: Gram of the doubled-space column vectors. Column 2j is
  // the left-multiplication branch (V phi x phi*), column 2j+1 the right one
  // (phi x (V phi)*); inner products factor per subsystem.
  std::vector<MatrixXcd> local_gram(L, MatrixXcd::Zero(cols, cols));
  for (int l = 0; l < L; ++l) {
    std::vector<VectorXcd> u(n_terms);
    const std::uint64_t d = std::uint64_t(1) << subsystem_sizes[l];
    VectorXcd phi = VectorXcd::Zero(static_cast<Eigen::Index>(d * d));
    for (std::uint64_t i = 0; i < d; ++i) {
      phi[static_cast<Eigen::Index>(i * d + i)] = 1.0 / std::sqrt(double(d));
    }
    for (int j = 0; j < n_terms; ++j) u[j] = doubled_vector(terms[j].factors[l]);
    // <A_j, A_k> = <u_j, u_k>, <B_j, B_k> = conj(<u_j, u_k>),
    // <A_j, B_k> = <u_j, phi> <u_k, phi>.
    for (int j = 0; j < n_terms; ++j) {
      for (int k = 0; k < n_terms; ++k) {
        const complexd uu = u[j].dot(u[k]);  // conj on u_j
        const complexd up_j = u[j].dot(phi);
        const complexd up_k = u[k].dot(phi);
        local_gram[l](2 * j, 2 * k) = uu;
        local_gram[l](2 * j + 1, 2 * k + 1) = std::conj(uu);
        local_gram[l](2 * j, 2 * k + 1) = up_j * up_k;
        local_gram[l](2 * j + 1, 2 * k) = std::conj(up_j * up_k);
      }
    }
  }

  VectorXcd coeff(cols);
  for (int j = 0; j < n_terms; ++j) {
    coeff[2 * j] = complexd(0.0, -terms[j].lambda);
    coeff[2 * j + 1] = complexd(0.0, terms[j].lambda);
  }

  for (int l = 0; l < L; ++l) {
    MatrixXcd gram_rows = local_gram[l];
    MatrixXcd gram_cols = MatrixXcd::Ones(cols, cols);
    for (int m = 0; m < L; ++m) {
      if (m != l) gram_cols = gram_cols.cwiseProduct(local_gram[m]);
    }
    const MatrixXcd core = gram_sqrt(gram_rows).adjoint() *
                           coeff.asDiagonal() * gram_sqrt(gram_cols).conjugate();
    Eigen::JacobiSVD<MatrixXcd> svd(core);
    report.per_subsystem_norms[l] = svd.singularValues().sum();
  }
  report.lower_bound = *std::max_element(report.per_subsystem_norms.begin(),
                                         report.per_subsystem_norms.end());
  return report;
}

double dyson_cost(int k, double lambda_total, double horizon) {
  if (k < 0) throw std::invalid_argument("order must be non-negative");
  return truncated_exp_series(2.0 * horizon * lambda_total, k);
}

double dyson_error_bound(int k, double v_norm, double horizon) {
  if (k < 0) throw std::invalid_argument("order must be non-negative");
  const double x = v_norm * horizon;
  double tail = 1.0;
  for (int n = 1; n <= k + 1; ++n) tail *= x / n;
  return std::exp(x) * tail;
}

double lr_bound_nn(int distance, double coupling, double t) {
  if (distance < 0) throw std::invalid_argument("distance must be >= 0");
  if (t < 0) throw std::invalid_argument("time must be >= 0");
  const double x = 4.0 * coupling * t;
  const double half = 0.5 * x;
  // I_d(x) = sum_m (x/2)^{d+2m} / (m! (m+d)!)
  double term = 1.0;
  for (int i = 1; i <= distance; ++i) term *= half / i;
  double sum = term;
  for (int m = 1; m < 512; ++m) {
    term *= half * half / (double(m) * double(m + distance));
    sum += term;
    if (term < 1e-17 * std::max(sum, 1e-300)) break;
  }
  return sum;
}

}  // namespace pqs
