#include "pqs/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

PauliString two_site(int n, int a, int b, char axis) {
  PauliString p = PauliString::single(n, a, axis);
  const PauliString q = PauliString::single(n, b, axis);
  p.x_mask |= q.x_mask;
  p.z_mask |= q.z_mask;
  return p;
}

std::vector<double> hubbard_up_potential(int sites) {
  // Gaussian well centred on the chain, -4 * exp(-(j-(L+1)/2)^2 / 2).
  std::vector<double> h(sites);
  for (int j = 1; j <= sites; ++j) {
    const double d = j - 0.5 * (sites + 1);
    h[j - 1] = -4.0 * std::exp(-0.5 * d * d);
  }
  return h;
}

struct HubbardFields {
  std::vector<double> up, dn;
};

HubbardFields resolve_potentials(const FermiHubbardSpec& spec) {
  HubbardFields f;
  f.up = spec.h_up.empty() ? hubbard_up_potential(spec.sites) : spec.h_up;
  f.dn = spec.h_dn.empty() ? std::vector<double>(spec.sites, 0.0) : spec.h_dn;
  require(static_cast<int>(f.up.size()) == spec.sites,
          "h_up length does not match the site count");
  require(static_cast<int>(f.dn.size()) == spec.sites,
          "h_dn length does not match the site count");
  return f;
}

void validate(const ModelSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TfimSpec>) {
          require(s.n >= 2, "tfim requires n >= 2");
          if (s.trotter_steps) {
            require(*s.trotter_steps >= 1, "trotter_steps must be positive");
          }
        } else if constexpr (std::is_same_v<T, PowerLawIsingSpec>) {
          require(s.n >= 4 && s.n % 2 == 0,
                  "power-law clusters require an even n >= 4");
          require(s.alpha > 0, "alpha must be positive");
        } else if constexpr (std::is_same_v<T, XXChainSpec>) {
          require(s.n >= 2, "xx chain requires n >= 2");
          require(s.onsite.empty() ||
                      static_cast<int>(s.onsite.size()) == s.n,
                  "onsite length does not match n");
        } else if constexpr (std::is_same_v<T, FermiHubbardSpec>) {
          require(s.sites >= 2, "fermi-hubbard requires at least 2 sites");
          require(s.n_up >= 0 && s.n_up <= s.sites, "n_up out of range");
          require(s.n_dn >= 0 && s.n_dn <= s.sites, "n_dn out of range");
        } else if constexpr (std::is_same_v<T, MultiClusterSpec>) {
          require(s.clusters >= 2, "multi-cluster requires >= 2 clusters");
          require(s.cluster_size >= 2, "cluster size must be >= 2");
          require(static_cast<int>(s.boundary_couplings.size()) ==
                      s.clusters - 1,
                  "boundary_couplings must have clusters-1 entries");
        }
      },
      spec);
}

}  // namespace

int InteractionTerm::support_size() const {
  int s = 0;
  for (const auto& f : factors) s += f.is_identity() ? 0 : 1;
  return s;
}

int PartitionedSystem::total_qubits() const {
  return std::accumulate(subsystem_sizes.begin(), subsystem_sizes.end(), 0);
}

int PartitionedSystem::subsystem_offset(int l) const {
  return std::accumulate(subsystem_sizes.begin(), subsystem_sizes.begin() + l,
                         0);
}

int total_qubits(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FermiHubbardSpec>) {
          return 2 * s.sites;
        } else if constexpr (std::is_same_v<T, MultiClusterSpec>) {
          return s.clusters * s.cluster_size;
        } else {
          return s.n;
        }
      },
      spec);
}

PauliSum build_full(const ModelSpec& spec) {
  validate(spec);
  if (const auto* fh = std::get_if<FermiHubbardSpec>(&spec)) {
    return jw_fermi_hubbard(*fh).full;
  }
  const int n = total_qubits(spec);
  PauliSum h(n);
  if (const auto* m = std::get_if<TfimSpec>(&spec)) {
    for (int i = 0; i + 1 < n; ++i) h.add(m->j, two_site(n, i, i + 1, 'Z'));
    for (int i = 0; i < n; ++i) {
      h.add(m->h, PauliString::single(n, i, 'X'));
    }
  } else if (const auto* m = std::get_if<PowerLawIsingSpec>(&spec)) {
    const int half = n / 2;
    for (int offset : {0, half}) {
      for (int i = 0; i < half; ++i) {
        for (int k = i + 1; k < half; ++k) {
          const double coeff = m->j0 * std::pow(double(k - i), -m->alpha);
          h.add(coeff, two_site(n, offset + i, offset + k, 'X'));
        }
        h.add(m->h, PauliString::single(n, offset + i, 'Z'));
      }
    }
    h.add(m->j0, two_site(n, half - 1, half, 'X'));
  } else if (const auto* m = std::get_if<XXChainSpec>(&spec)) {
    const int mid = n / 2 - 1;
    for (int i = 0; i + 1 < n; ++i) {
      const double j = (i == mid) ? m->j_boundary : m->j;
      h.add(j, two_site(n, i, i + 1, 'X'));
      h.add(j, two_site(n, i, i + 1, 'Y'));
    }
    double constant = 0.0;
    for (int i = 0; i < n; ++i) {
      const double hi = m->onsite.empty() ? 0.0 : m->onsite[i];
      if (hi == 0.0) continue;
      h.add(-0.5 * hi, PauliString::single(n, i, 'Z'));
      constant += 0.5 * hi;
    }
    if (constant != 0.0) h.add(constant, PauliString::identity(n));
  } else if (const auto* m = std::get_if<MultiClusterSpec>(&spec)) {
    for (int c = 0; c < m->clusters; ++c) {
      const int off = c * m->cluster_size;
      for (int i = 0; i + 1 < m->cluster_size; ++i) {
        h.add(m->j, two_site(n, off + i, off + i + 1, 'X'));
      }
      for (int i = 0; i < m->cluster_size; ++i) {
        h.add(m->h, PauliString::single(n, off + i, 'Z'));
      }
    }
    for (int c = 0; c + 1 < m->clusters; ++c) {
      const int left = (c + 1) * m->cluster_size - 1;
      h.add(m->boundary_couplings[c], two_site(n, left, left + 1, 'X'));
    }
  }
  return h;
}

PartitionedSystem partition_pauli_sum(const PauliSum& full,
                                      const std::vector<int>& cut) {
  const int n = full.n_qubits();
  int sum = 0;
  for (int s : cut) {
    require(s >= 1, "cut entries must be positive");
    sum += s;
  }
  require(sum == n, "cut does not sum to the register size (cut mismatch)");

  PartitionedSystem sys;
  sys.subsystem_sizes = cut;
  const int L = sys.n_subsystems();
  sys.local_hams.assign(L, PauliSum());
  for (int l = 0; l < L; ++l) sys.local_hams[l] = PauliSum(cut[l]);
  sys.global_to_local.resize(n);
  std::vector<int> offsets(L);
  for (int l = 0, off = 0; l < L; off += cut[l], ++l) {
    offsets[l] = off;
    for (int q = 0; q < cut[l]; ++q) sys.global_to_local[off + q] = {l, q};
  }

  for (const auto& term : full.terms()) {
    std::vector<PauliString> factors(L);
    int touched = 0, last = -1;
    for (int l = 0; l < L; ++l) {
      const std::uint64_t mask =
          cut[l] == 64 ? ~std::uint64_t(0)
                       : ((std::uint64_t(1) << cut[l]) - 1);
      factors[l] = PauliString(cut[l], (term.str.x_mask >> offsets[l]) & mask,
                               (term.str.z_mask >> offsets[l]) & mask);
      if (!factors[l].is_identity()) {
        ++touched;
        last = l;
      }
    }
    if (touched == 0) {
      sys.dropped_constant += term.coeff;
      std::ostringstream note;
      note << "dropped identity term with weight " << term.coeff;
      sys.notes.push_back(note.str());
    } else if (touched == 1) {
      sys.local_hams[last].add(term.coeff, factors[last]);
    } else {
      sys.interactions.push_back({term.coeff, std::move(factors)});
    }
  }
  return sys;
}

PartitionedSystem partition(const ModelSpec& spec,
                            const std::vector<int>& cut) {
  return partition_pauli_sum(build_full(spec), cut);
}

JordanWignerResult jw_fermi_hubbard(const FermiHubbardSpec& spec) {
  validate(ModelSpec(spec));
  const int L = spec.sites;
  const int n = 2 * L;
  const HubbardFields fields = resolve_potentials(spec);

  JordanWignerResult out;
  PauliSum h(n);
  // Hopping within each spin sector; adjacent Jordan-Wigner ordering leaves
  // no strings.
  for (int off : {0, L}) {
    for (int i = 0; i + 1 < L; ++i) {
      h.add(-0.5 * spec.j, two_site(n, off + i, off + i + 1, 'X'));
      h.add(-0.5 * spec.j, two_site(n, off + i, off + i + 1, 'Y'));
    }
  }
  // U n_up n_dn = (U/4)(I + Z Z - Z - Z) per site.
  for (int i = 0; i < L; ++i) {
    if (spec.u != 0.0) {
      h.add(0.25 * spec.u, two_site(n, i, L + i, 'Z'));
      h.add(-0.25 * spec.u, PauliString::single(n, i, 'Z'));
      h.add(-0.25 * spec.u, PauliString::single(n, L + i, 'Z'));
      out.dropped_constant += 0.25 * spec.u;
    }
  }
  // Potentials h n = (h/2)(I - Z).
  for (int i = 0; i < L; ++i) {
    if (fields.up[i] != 0.0) {
      h.add(-0.5 * fields.up[i], PauliString::single(n, i, 'Z'));
      out.dropped_constant += 0.5 * fields.up[i];
    }
    if (fields.dn[i] != 0.0) {
      h.add(-0.5 * fields.dn[i], PauliString::single(n, L + i, 'Z'));
      out.dropped_constant += 0.5 * fields.dn[i];
    }
  }
  out.full = h;
  out.partitioned = partition_pauli_sum(h, {L, L});
  return out;
}

namespace {

StateVector slater_sector(int sites, double j, const std::vector<double>& h,
                          int n_filled) {
  StateVector psi(sites);
  if (n_filled == 0) {
    psi.amps[0] = 1.0;
    return psi;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sites, sites);
  for (int i = 0; i < sites; ++i) m(i, i) = h[i];
  for (int i = 0; i + 1 < sites; ++i) m(i, i + 1) = m(i + 1, i) = -j;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (n_filled < sites &&
      eig.eigenvalues()[n_filled] - eig.eigenvalues()[n_filled - 1] < 1e-12) {
    throw ConfigError(
        "degenerate Fermi level: orbital energies " +
        std::to_string(n_filled) + " and " + std::to_string(n_filled + 1) +
        " coincide; select orbitals explicitly by lifting the degeneracy");
  }
  const Eigen::MatrixXd orbitals = eig.eigenvectors().leftCols(n_filled);

  // Amplitude of an occupation bitstring is the determinant of the orbital
  // matrix restricted to the occupied rows.
  const std::size_t dim = psi.dim();
  Eigen::MatrixXd sub(n_filled, n_filled);
  for (std::size_t b = 0; b < dim; ++b) {
    if (std::popcount(b) != n_filled) continue;
    int r = 0;
    for (int q = 0; q < sites; ++q) {
      if ((b >> q) & 1) sub.row(r++) = orbitals.row(q);
    }
    psi.amps[b] = sub.determinant();
  }
  psi.normalize();
  return psi;
}

}  // namespace

std::pair<StateVector, StateVector> ground_state_noninteracting(
    const FermiHubbardSpec& spec) {
  validate(ModelSpec(spec));
  const HubbardFields fields = resolve_potentials(spec);
  return {slater_sector(spec.sites, spec.j, fields.up, spec.n_up),
          slater_sector(spec.sites, spec.j, fields.dn, spec.n_dn)};
}

std::vector<StateVector> build_initial(const ModelSpec& spec,
                                       const PartitionedSystem& system,
                                       const InitialPreset& preset) {
  const int L = system.n_subsystems();
  if (std::holds_alternative<AllZeroInit>(preset)) {
    std::vector<StateVector> out;
    out.reserve(L);
    for (int l = 0; l < L; ++l) {
      out.push_back(StateVector::zero_state(system.subsystem_sizes[l]));
    }
    return out;
  }
  if (const auto* flips = std::get_if<FlipSitesInit>(&preset)) {
    std::vector<std::uint64_t> bits(L, 0);
    for (int site : flips->sites) {
      const int g = site - 1;
      require(g >= 0 && g < system.total_qubits(),
              "flip site outside the register: " + std::to_string(site));
      const auto [l, q] = system.global_to_local[g];
      bits[l] ^= std::uint64_t(1) << q;
    }
    std::vector<StateVector> out;
    out.reserve(L);
    for (int l = 0; l < L; ++l) {
      out.push_back(
          StateVector::basis_state(system.subsystem_sizes[l], bits[l]));
    }
    return out;
  }
  const auto* fh = std::get_if<FermiHubbardSpec>(&spec);
  require(fh != nullptr,
          "the hubbard-ground preset applies to the fermi-hubbard model only");
  require(L == 2 && system.subsystem_sizes[0] == fh->sites &&
              system.subsystem_sizes[1] == fh->sites,
          "hubbard-ground requires the spin cut [sites, sites]");
  auto [up, dn] = ground_state_noninteracting(*fh);
  std::vector<StateVector> out;
  out.push_back(std::move(up));
  out.push_back(std::move(dn));
  return out;
}

namespace {

std::vector<LocalOp> identity_ops(const PartitionedSystem& sys) {
  return std::vector<LocalOp>(sys.n_subsystems(), IdentityOp{});
}

// Product of single-site Paulis at global qubits, grouped per subsystem.
ObservableTerm product_term(const PartitionedSystem& sys, double coeff,
                            const std::vector<std::pair<int, char>>& sites) {
  ObservableTerm term;
  term.coeff = coeff;
  term.local_ops = identity_ops(sys);
  std::vector<PauliString> partial(sys.n_subsystems());
  for (int l = 0; l < sys.n_subsystems(); ++l) {
    partial[l] = PauliString::identity(sys.subsystem_sizes[l]);
  }
  for (const auto& [g, axis] : sites) {
    const auto [l, q] = sys.global_to_local.at(g);
    const PauliString p = PauliString::single(sys.subsystem_sizes[l], q, axis);
    partial[l].x_mask ^= p.x_mask;
    partial[l].z_mask ^= p.z_mask;
  }
  for (int l = 0; l < sys.n_subsystems(); ++l) {
    if (!partial[l].is_identity()) {
      PauliSum op(sys.subsystem_sizes[l]);
      op.add(1.0, partial[l]);
      term.local_ops[l] = std::move(op);
    }
  }
  return term;
}

int parse_site(const PartitionedSystem& sys, const std::string& text) {
  const int site = std::stoi(text);
  require(site >= 1 && site <= sys.total_qubits(),
          "site label out of range: " + text);
  return site;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

std::vector<ObservableSum> build_observables(const ModelSpec& spec,
                                             const PartitionedSystem& system,
                                             const std::string& which,
                                             const InitialPreset& initial) {
  const int n = system.total_qubits();
  std::vector<ObservableSum> out;
  const auto parts = split(which, ':');
  const std::string& family = parts[0];

  auto density_sum = [&](const std::string& name, int g) {
    ObservableSum obs;
    obs.name = name;
    obs.terms.push_back({0.5, identity_ops(system)});
    obs.terms.push_back(product_term(system, -0.5, {{g, 'Z'}}));
    return obs;
  };

  if (family == "identity") {
    ObservableSum obs;
    obs.name = "identity";
    obs.terms.push_back({1.0, identity_ops(system)});
    out.push_back(std::move(obs));
  } else if (family == "density") {
    for (int j = 1; j <= n; ++j) {
      out.push_back(density_sum("n_" + std::to_string(j), j - 1));
    }
  } else if (family == "m_z") {
    ObservableSum obs;
    obs.name = "m_z";
    for (int g = 0; g < n; ++g) {
      obs.terms.push_back(product_term(system, 1.0 / n, {{g, 'Z'}}));
    }
    out.push_back(std::move(obs));
  } else if (family == "loschmidt") {
    if (!std::holds_alternative<AllZeroInit>(initial)) {
      throw ConfigError("loschmidt requires the all-zero initial preset");
    }
    ObservableSum obs;
    obs.name = "loschmidt";
    ObservableTerm term;
    term.coeff = 1.0;
    for (int l = 0; l < system.n_subsystems(); ++l) {
      term.local_ops.push_back(BasisProjector{0});
    }
    obs.terms.push_back(std::move(term));
    out.push_back(std::move(obs));
  } else if (family == "c_nn") {
    ObservableSum obs;
    obs.name = "c_nn";
    for (int g = 0; g + 1 < n; ++g) {
      obs.terms.push_back(
          product_term(system, 1.0 / (n - 1), {{g, 'Z'}, {g + 1, 'Z'}}));
    }
    out.push_back(std::move(obs));
  } else if (family == "z") {
    require(parts.size() == 2, "usage: z:<site>");
    const int j = parse_site(system, parts[1]);
    ObservableSum obs;
    obs.name = "z_" + parts[1];
    obs.terms.push_back(product_term(system, 1.0, {{j - 1, 'Z'}}));
    out.push_back(std::move(obs));
  } else if (family == "zz") {
    require(parts.size() == 3, "usage: zz:<site>:<site>");
    const int a = parse_site(system, parts[1]);
    const int b = parse_site(system, parts[2]);
    ObservableSum obs;
    obs.name = "zz_" + parts[1] + "_" + parts[2];
    obs.terms.push_back(product_term(system, 1.0, {{a - 1, 'Z'}, {b - 1, 'Z'}}));
    out.push_back(std::move(obs));
  } else if (family == "nn") {
    require(parts.size() == 3, "usage: nn:<site>:<site>");
    const int a = parse_site(system, parts[1]) - 1;
    const int b = parse_site(system, parts[2]) - 1;
    require(a != b, "nn sites must differ");
    ObservableSum obs;
    obs.name = "nn_" + parts[1] + "_" + parts[2];
    obs.terms.push_back({0.25, identity_ops(system)});
    obs.terms.push_back(product_term(system, -0.25, {{a, 'Z'}}));
    obs.terms.push_back(product_term(system, -0.25, {{b, 'Z'}}));
    obs.terms.push_back(product_term(system, 0.25, {{a, 'Z'}, {b, 'Z'}}));
    out.push_back(std::move(obs));
  } else if (family == "charge_density" || family == "spin_density" ||
             family == "kappa") {
    const auto* fh = std::get_if<FermiHubbardSpec>(&spec);
    require(fh != nullptr, family + " applies to the fermi-hubbard model");
    const int sites = fh->sites;
    const double spin_sign = (family == "spin_density") ? -1.0 : 1.0;
    if (family != "kappa") {
      for (int j = 1; j <= sites; ++j) {
        ObservableSum obs;
        obs.name = (family == "charge_density" ? "rho_c_" : "rho_s_") +
                   std::to_string(j);
        if (spin_sign > 0) obs.terms.push_back({1.0, identity_ops(system)});
        obs.terms.push_back(product_term(system, -0.5, {{j - 1, 'Z'}}));
        obs.terms.push_back(
            product_term(system, 0.5 * -spin_sign, {{sites + j - 1, 'Z'}}));
        out.push_back(std::move(obs));
      }
    } else {
      for (double sign : {1.0, -1.0}) {
        ObservableSum obs;
        obs.name = sign > 0 ? "kappa_c" : "kappa_s";
        double constant = 0.0;
        for (int j = 1; j <= sites; ++j) {
          const double w = std::abs(j - 0.5 * (sites + 1));
          constant += w * 0.5 * (1.0 + sign);
          obs.terms.push_back(product_term(system, -0.5 * w, {{j - 1, 'Z'}}));
          obs.terms.push_back(
              product_term(system, -0.5 * w * sign, {{sites + j - 1, 'Z'}}));
        }
        if (constant != 0.0) {
          obs.terms.push_back({constant, identity_ops(system)});
        }
        out.push_back(std::move(obs));
      }
    }
  } else {
    throw ConfigError("unknown observable family: " + which);
  }
  return out;
}

PauliString embed_factors(const PartitionedSystem& system,
                          const std::vector<PauliString>& factors) {
  require(static_cast<int>(factors.size()) == system.n_subsystems(),
          "factor list does not match the partition");
  PauliString p = PauliString::identity(system.total_qubits());
  for (int l = 0; l < system.n_subsystems(); ++l) {
    const int off = system.subsystem_offset(l);
    p.x_mask |= factors[l].x_mask << off;
    p.z_mask |= factors[l].z_mask << off;
  }
  return p;
}

PauliSum embed_local(const PartitionedSystem& system, int subsystem,
                     const PauliSum& local) {
  const int off = system.subsystem_offset(subsystem);
  PauliSum out(system.total_qubits());
  for (const auto& term : local.terms()) {
    out.add(term.coeff, PauliString(system.total_qubits(),
                                    term.str.x_mask << off,
                                    term.str.z_mask << off));
  }
  return out;
}

namespace {

class TrotterPropagator : public Propagator {
 public:
  TrotterPropagator(const PauliSum& h, double step) : step_(step) {
    const int n = h.n_qubits();
    require(n <= 20, "trotter propagator register too large");
    x_field_.assign(n, 0.0);
    diag_.assign(std::size_t(1) << n, 0.0);
    for (const auto& term : h.terms()) {
      if (term.str.x_mask == 0) {
        for (std::size_t b = 0; b < diag_.size(); ++b) {
          diag_[b] += term.coeff *
                      ((std::popcount(b & term.str.z_mask) & 1) ? -1.0 : 1.0);
        }
      } else if (term.str.z_mask == 0 &&
                 std::popcount(term.str.x_mask) == 1) {
        x_field_[std::countr_zero(term.str.x_mask)] += term.coeff;
      } else {
        throw std::invalid_argument(
            "trotter mode expects diagonal couplings plus single-qubit X "
            "fields");
      }
    }
  }

  void advance(StateVector& psi, double t0, double t1) const override {
    while (t1 - t0 > 1e-12) {
      const long k = static_cast<long>(std::floor(t0 / step_ + 1e-9));
      const double boundary = step_ * (k + 1);
      const double t_stop = std::min(t1, boundary);
      apply_layers(psi, t_stop - t0);
      t0 = t_stop;
    }
  }

 private:
  // One first-order slice: all ZZ couplings, then all X fields.
  void apply_layers(StateVector& psi, double tau) const {
    if (tau <= 0) return;
    for (std::size_t b = 0; b < psi.dim(); ++b) {
      psi.amps[b] *= std::exp(complexd(0.0, -tau * diag_[b]));
    }
    for (std::size_t q = 0; q < x_field_.size(); ++q) {
      if (x_field_[q] == 0.0) continue;
      const double c = std::cos(x_field_[q] * tau);
      const complexd s(0.0, -std::sin(x_field_[q] * tau));
      const std::size_t bit = std::size_t(1) << q;
      for (std::size_t b = 0; b < psi.dim(); ++b) {
        if (b & bit) continue;
        const complexd a0 = psi.amps[b], a1 = psi.amps[b | bit];
        psi.amps[b] = c * a0 + s * a1;
        psi.amps[b | bit] = s * a0 + c * a1;
      }
    }
  }

  double step_;
  std::vector<double> x_field_;
  std::vector<double> diag_;
};

}  // namespace

TrotterEvolver::TrotterEvolver(double horizon, int steps) {
  require(horizon > 0 && steps >= 1, "invalid trotter step grid");
  step_ = horizon / steps;
}

std::unique_ptr<Propagator> TrotterEvolver::prepare(const PauliSum& h) const {
  return std::make_unique<TrotterPropagator>(h, step_);
}

}  // namespace pqs
