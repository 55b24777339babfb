#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "pqs/errors.hpp"
#include "pqs/models.hpp"
#include "pqs/verify.hpp"
#include "support/test_helpers.hpp"

using namespace pqs;

namespace {

std::map<std::pair<std::uint64_t, std::uint64_t>, double> term_map(
    const PauliSum& h) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> m;
  for (const auto& t : h.terms()) m[{t.str.x_mask, t.str.z_mask}] = t.coeff;
  return m;
}

double coeff_of(const PauliSum& h, const std::string& label) {
  const PauliString p = PauliString::from_label(h.n_qubits(), label);
  for (const auto& t : h.terms()) {
    if (t.str == p) return t.coeff;
  }
  return 0.0;
}

// Expectation of a product observable on per-subsystem states.
double eval_obs(const ObservableSum& obs,
                const std::vector<StateVector>& states) {
  complexd total = 0.0;
  for (const auto& term : obs.terms) {
    complexd prod = term.coeff;
    for (std::size_t l = 0; l < states.size(); ++l) {
      prod *= bilinear(states[l], term.local_ops[l], states[l]);
    }
    total += prod;
  }
  CHECK(std::abs(total.imag()) <= 1e-12);
  return total.real();
}

// Fermionic number-basis oracle for the Hubbard chain: modes ordered as
// up sites then down sites, matching the qubit layout.
Eigen::MatrixXd hubbard_number_basis(const FermiHubbardSpec& spec,
                                     const std::vector<double>& h_up,
                                     const std::vector<double>& h_dn) {
  const int modes = 2 * spec.sites;
  const std::size_t dim = std::size_t(1) << modes;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  auto hop = [&](int p, int q, double amp) {
    // amp * (c_p^dag c_q + h.c.)
    for (std::size_t b = 0; b < dim; ++b) {
      if (!((b >> q) & 1) || ((b >> p) & 1)) continue;
      std::size_t mid = b & ~(std::size_t(1) << q);
      int sign = std::popcount(mid & ((std::size_t(1) << q) - 1)) & 1 ? -1 : 1;
      sign *= std::popcount(mid & ((std::size_t(1) << p) - 1)) & 1 ? -1 : 1;
      const std::size_t out = mid | (std::size_t(1) << p);
      h(out, b) += amp * sign;
      h(b, out) += amp * sign;
    }
  };
  for (int off : {0, spec.sites}) {
    for (int i = 0; i + 1 < spec.sites; ++i) {
      hop(off + i, off + i + 1, -spec.j);
    }
  }
  for (std::size_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int i = 0; i < spec.sites; ++i) {
      const bool up = (b >> i) & 1, dn = (b >> (spec.sites + i)) & 1;
      if (up && dn) diag += spec.u;
      if (up) diag += h_up[i];
      if (dn) diag += h_dn[i];
    }
    h(b, b) += diag;
  }
  return h;
}

}  // namespace

TEST_CASE("tfim terms") {
  const PauliSum h = build_full(TfimSpec{3, 1.0, 0.5, {}});
  CHECK(h.size() == 5);
  CHECK(coeff_of(h, "ZZI") == 1.0);
  CHECK(coeff_of(h, "IZZ") == 1.0);
  CHECK(coeff_of(h, "XII") == 0.5);
  CHECK(coeff_of(h, "IXI") == 0.5);
  CHECK(coeff_of(h, "IIX") == 0.5);
}

TEST_CASE("xx chain terms") {
  const PauliSum h = build_full(XXChainSpec{2, 0.7, 0.7, {}});
  CHECK(h.size() == 2);
  CHECK(coeff_of(h, "XX") == 0.7);
  CHECK(coeff_of(h, "YY") == 0.7);
}

TEST_CASE("power-law couplings decay inside each cluster") {
  const PauliSum h = build_full(PowerLawIsingSpec{8, 1.0, 1.0, 2.0});
  // J_13 with 1-based sites: distance 2, so 0.5.
  CHECK(coeff_of(h, "XIXIIIII") == 0.5);
  CHECK(coeff_of(h, "XXIIIIII") == 1.0);
  // No couplings across the cluster boundary except the single contact bond.
  CHECK(coeff_of(h, "IIIIXIXI") == 0.5);
  CHECK(coeff_of(h, "IIIXXIII") == 1.0);
  CHECK(coeff_of(h, "IIXIIXII") == 0.0);
  CHECK(coeff_of(h, "IIIIIIXX") == 1.0);
}

TEST_CASE("partition splits the dqpt chain at the cut bond") {
  const PartitionedSystem sys = partition(TfimSpec{8, 1.0, 1.5, {}}, {4, 4});
  REQUIRE(sys.interactions.size() == 1);
  const InteractionTerm& v = sys.interactions[0];
  CHECK(v.lambda == 1.0);
  CHECK(v.factors[0] == PauliString::single(4, 3, 'Z'));
  CHECK(v.factors[1] == PauliString::single(4, 0, 'Z'));
  CHECK(sys.local_hams[0].size() == 3 + 4);
  CHECK(sys.local_hams[1].size() == 3 + 4);
}

TEST_CASE("partition of the walk chain yields the two boundary couplings") {
  const PartitionedSystem sys =
      partition(XXChainSpec{16, 0.5, 0.4, {}}, {8, 8});
  REQUIRE(sys.interactions.size() == 2);
  for (const auto& v : sys.interactions) {
    CHECK(v.lambda == 0.4);
    CHECK(v.factors[0].weight() == 1);
    CHECK(v.factors[1].weight() == 1);
  }
}

TEST_CASE("multi-cluster chain produces one coupling per adjacent pair") {
  MultiClusterSpec spec{6, 8, 1.0, 1.0, {0.1, 0.2, 0.3, 0.4, 0.5}};
  const PartitionedSystem sys =
      partition(spec, std::vector<int>(6, 8));
  REQUIRE(sys.interactions.size() == 5);
  for (int c = 0; c < 5; ++c) {
    CHECK(sys.interactions[c].lambda == spec.boundary_couplings[c]);
    CHECK(sys.interactions[c].factors[c] == PauliString::single(8, 7, 'X'));
    CHECK(sys.interactions[c].factors[c + 1] == PauliString::single(8, 0, 'X'));
  }
}

TEST_CASE("cut mismatch is rejected") {
  CHECK_THROWS_WITH_AS(partition(TfimSpec{8, 1.0, 1.5, {}}, {5, 4}),
                       doctest::Contains("cut"), std::invalid_argument);
}

TEST_CASE("reassembly: locals plus interactions reproduce the full sum") {
  const std::vector<std::pair<ModelSpec, std::vector<int>>> cases = {
      {TfimSpec{8, 1.0, 1.5, {}}, {4, 4}},
      {XXChainSpec{8, 0.5, 0.4, {0.3, 0, 0, 0.2, 0, 0, 0, -0.1}}, {4, 4}},
      {PowerLawIsingSpec{8, 1.0, 1.0, 16.0}, {4, 4}},
      {MultiClusterSpec{3, 4, 1.0, 1.0, {0.3, 0.2}}, {4, 4, 4}},
      {FermiHubbardSpec{3, 0.5, 0.5, {}, {}, 1, 1}, {3, 3}},
  };
  for (const auto& [spec, cut] : cases) {
    const PauliSum full = build_full(spec);
    const PartitionedSystem sys = partition(spec, cut);
    PauliSum rebuilt(full.n_qubits());
    for (int l = 0; l < sys.n_subsystems(); ++l) {
      rebuilt += embed_local(sys, l, sys.local_hams[l]);
    }
    for (const auto& v : sys.interactions) {
      rebuilt.add(v.lambda, embed_factors(sys, v.factors));
    }
    if (sys.dropped_constant != 0.0) {
      rebuilt.add(sys.dropped_constant,
                  PauliString::identity(full.n_qubits()));
    }
    const auto a = term_map(full), b = term_map(rebuilt);
    REQUIRE(a.size() == b.size());
    for (const auto& [key, coeff] : a) {
      REQUIRE(b.count(key) == 1);
      CHECK(b.at(key) == doctest::Approx(coeff).epsilon(1e-12));
    }
  }
}

TEST_CASE("jordan-wigner image matches the fermionic oracle at two sites") {
  FermiHubbardSpec spec{2, 0.5, 0.8, {0.2, -0.1}, {0.05, 0.3}, 1, 1};
  const JordanWignerResult jw = jw_fermi_hubbard(spec);

  Eigen::MatrixXcd qubit_h = test::dense_from_sum(jw.full);
  qubit_h += jw.dropped_constant *
             Eigen::MatrixXcd::Identity(qubit_h.rows(), qubit_h.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eq(qubit_h);

  const Eigen::MatrixXd ferm =
      hubbard_number_basis(spec, spec.h_up, spec.h_dn);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ef(ferm);

  for (int k = 0; k < 16; ++k) {
    CHECK(eq.eigenvalues()[k] ==
          doctest::Approx(ef.eigenvalues()[k]).epsilon(1e-10));
  }
}

TEST_CASE("spin cut carries the on-site couplings") {
  FermiHubbardSpec spec{8, 0.5, 0.5, {}, {}, 2, 2};
  const JordanWignerResult jw = jw_fermi_hubbard(spec);
  CHECK(jw.partitioned.interactions.size() == 8);
  double total = 0.0;
  for (const auto& v : jw.partitioned.interactions) {
    total += std::abs(v.lambda);
  }
  CHECK(total == doctest::Approx(8 * 0.5 / 4.0));  // L U / 4 = 1
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("hubbard spectrum is symmetric under spin swap") {
  for (int sites : {2, 3}) {
    std::vector<double> h(sites);
    for (int i = 0; i < sites; ++i) h[i] = 0.1 * (i + 1);
    FermiHubbardSpec spec{sites, 0.5, 0.7, h, h, 1, 1};
    const PauliSum full = jw_fermi_hubbard(spec).full;

    // Swap the up and down registers by permuting the Pauli masks.
    PauliSum swapped(full.n_qubits());
    for (const auto& term : full.terms()) {
      auto swap_mask = [&](std::uint64_t m) {
        const std::uint64_t lo = m & ((std::uint64_t(1) << sites) - 1);
        const std::uint64_t hi = m >> sites;
        return (lo << sites) | hi;
      };
      swapped.add(term.coeff,
                  PauliString(full.n_qubits(), swap_mask(term.str.x_mask),
                              swap_mask(term.str.z_mask)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(
        test::dense_from_sum(full));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(
        test::dense_from_sum(swapped));
    CHECK((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff() <=
          1e-10);
  }
}

TEST_CASE("number conservation") {
  SUBCASE("xx chain") {
    const PauliSum h = build_full(XXChainSpec{4, 0.5, 0.5, {0.1, 0.2, 0, 0}});
    PauliSum number(4);
    for (int i = 0; i < 4; ++i) {
      number.add(-0.5, PauliString::single(4, i, 'Z'));
    }
    const Eigen::MatrixXcd a = test::dense_from_sum(h);
    const Eigen::MatrixXcd b = test::dense_from_sum(number);
    CHECK((a * b - b * a).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("hubbard per sector") {
    FermiHubbardSpec spec{2, 0.5, 0.8, {0.2, -0.1}, {}, 1, 1};
    const PauliSum h = jw_fermi_hubbard(spec).full;
    for (int off : {0, 2}) {
      PauliSum number(4);
      for (int i = 0; i < 2; ++i) {
        number.add(-0.5, PauliString::single(4, off + i, 'Z'));
      }
      const Eigen::MatrixXcd a = test::dense_from_sum(h);
      const Eigen::MatrixXcd b = test::dense_from_sum(number);
      CHECK((a * b - b * a).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("slater states") {
  SUBCASE("empty sector is the vacuum") {
    FermiHubbardSpec spec{3, 0.5, 0.5, {}, {}, 0, 0};
    const auto [up, dn] = ground_state_noninteracting(spec);
    CHECK(std::abs(up.amps[0] - complexd(1.0)) <= 1e-15);
  }
  SUBCASE("two sites, half filling of one particle") {
    FermiHubbardSpec spec{2, 1.0, 0.0, {0, 0}, {0, 0}, 1, 0};
    const auto [up, dn] = ground_state_noninteracting(spec);
    CHECK(std::abs(up.amps[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(up.amps[2]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    // Bonding orbital: both amplitudes share a sign.
    CHECK((up.amps[1] * up.amps[2]).real() > 0.0);
  }
  SUBCASE("sector energy equals the sum of filled orbital energies") {
    const int sites = 5;
    FermiHubbardSpec spec{sites, 0.7, 0.0, {}, {}, 2, 0};
    const auto fields_up = [&] {
      std::vector<double> h(sites);
      for (int j = 1; j <= sites; ++j) {
        const double d = j - 0.5 * (sites + 1);
        h[j - 1] = -4.0 * std::exp(-0.5 * d * d);
      }
      return h;
    }();
    const auto [up, dn] = ground_state_noninteracting(spec);

    PauliSum sector(sites);
    double constant = 0.0;
    for (int i = 0; i + 1 < sites; ++i) {
      PauliString xx = PauliString::single(sites, i, 'X');
      xx.x_mask |= PauliString::single(sites, i + 1, 'X').x_mask;
      sector.add(-0.5 * spec.j, xx);
      PauliString yy = PauliString::single(sites, i, 'Y');
      yy.x_mask |= PauliString::single(sites, i + 1, 'Y').x_mask;
      yy.z_mask |= PauliString::single(sites, i + 1, 'Y').z_mask;
      sector.add(-0.5 * spec.j, yy);
    }
    for (int i = 0; i < sites; ++i) {
      sector.add(-0.5 * fields_up[i], PauliString::single(sites, i, 'Z'));
      constant += 0.5 * fields_up[i];
    }
    const double energy =
        bilinear(up, LocalOp(sector), up).real() + constant;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sites, sites);
    for (int i = 0; i < sites; ++i) m(i, i) = fields_up[i];
    for (int i = 0; i + 1 < sites; ++i) m(i, i + 1) = m(i + 1, i) = -spec.j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    const double expected = eig.eigenvalues()[0] + eig.eigenvalues()[1];
    CHECK(energy == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("degenerate fermi level is refused") {
    FermiHubbardSpec spec{2, 0.0, 0.5, {0, 0}, {0, 0}, 1, 0};
    CHECK_THROWS_AS(ground_state_noninteracting(spec), ConfigError);
  }
}

TEST_CASE("initial states") {
  SUBCASE("all-zero product") {
    const PartitionedSystem sys = partition(TfimSpec{4, 1, 1, {}}, {2, 2});
    const auto states =
        build_initial(TfimSpec{4, 1, 1, {}}, sys, AllZeroInit{});
    REQUIRE(states.size() == 2);
    CHECK(states[0].amps[0] == complexd(1.0));
    CHECK(states[1].amps[0] == complexd(1.0));
  }
  SUBCASE("flip site 8 lands on local index 7 of the first half") {
    const XXChainSpec spec{16, 0.5, 0.4, {}};
    const PartitionedSystem sys = partition(spec, {8, 8});
    const auto states = build_initial(spec, sys, FlipSitesInit{{8}});
    CHECK(states[0].amps[1 << 7] == complexd(1.0));
    CHECK(states[1].amps[0] == complexd(1.0));
  }
  SUBCASE("flip outside the register is rejected") {
    const XXChainSpec spec{4, 0.5, 0.4, {}};
    const PartitionedSystem sys = partition(spec, {2, 2});
    CHECK_THROWS_AS(build_initial(spec, sys, FlipSitesInit{{5}}),
                    std::invalid_argument);
  }
  SUBCASE("hubbard ground product") {
    const FermiHubbardSpec spec{4, 0.5, 0.5, {}, {}, 1, 1};
    const PartitionedSystem sys = partition(spec, {4, 4});
    const auto states = build_initial(spec, sys, HubbardGroundInit{});
    REQUIRE(states.size() == 2);
    CHECK(states[0].norm() == doctest::Approx(1.0));
    CHECK(states[1].norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("observables") {
  const XXChainSpec spec{4, 0.5, 0.4, {}};
  const PartitionedSystem sys = partition(spec, {2, 2});
  std::mt19937_64 gen(31);
  const std::vector<StateVector> states = {test::random_state(2, gen),
                                           test::random_state(2, gen)};
  const StateVector full = product_state(sys, states);
  const Eigen::VectorXcd v = test::as_vector(full);

  SUBCASE("m_z splits into one single-site term per qubit") {
    const auto obs = build_observables(spec, sys, "m_z", AllZeroInit{});
    REQUIRE(obs.size() == 1);
    CHECK(obs[0].terms.size() == 4);
    for (const auto& term : obs[0].terms) CHECK(term.coeff == 0.25);
    const Eigen::MatrixXcd mz =
        0.25 * (test::dense_from_label("ZIII") + test::dense_from_label("IZII") +
                test::dense_from_label("IIZI") + test::dense_from_label("IIIZ"));
    const double expected = (v.adjoint() * mz * v)(0).real();
    CHECK(eval_obs(obs[0], states) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("correlator assembly across the cut") {
    const auto zz = build_observables(spec, sys, "zz:2:3", AllZeroInit{});
    const auto z2 = build_observables(spec, sys, "z:2", AllZeroInit{});
    const auto z3 = build_observables(spec, sys, "z:3", AllZeroInit{});
    const double c =
        eval_obs(zz[0], states) - eval_obs(z2[0], states) * eval_obs(z3[0], states);
    const Eigen::MatrixXcd zz_d = test::dense_from_label("IZZI");
    const Eigen::MatrixXcd z2_d = test::dense_from_label("IZII");
    const Eigen::MatrixXcd z3_d = test::dense_from_label("IIZI");
    const double expected = (v.adjoint() * zz_d * v)(0).real() -
                            (v.adjoint() * z2_d * v)(0).real() *
                                (v.adjoint() * z3_d * v)(0).real();
    CHECK(c == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("density-density expansion") {
    const auto nn = build_observables(spec, sys, "nn:1:3", AllZeroInit{});
    REQUIRE(nn[0].terms.size() == 4);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(16, 16);
    const Eigen::MatrixXcd n1 = 0.5 * (eye - test::dense_from_label("ZIII"));
    const Eigen::MatrixXcd n3 = 0.5 * (eye - test::dense_from_label("IIZI"));
    const double expected = (v.adjoint() * (n1 * n3) * v)(0).real();
    CHECK(eval_obs(nn[0], states) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("density of the vacuum vanishes") {
    const auto obs = build_observables(spec, sys, "density", AllZeroInit{});
    REQUIRE(obs.size() == 4);
    const std::vector<StateVector> vac = {StateVector::zero_state(2),
                                          StateVector::zero_state(2)};
    for (const auto& o : obs) CHECK(eval_obs(o, vac) == doctest::Approx(0.0));
  }
  SUBCASE("loschmidt needs the all-zero preset") {
    CHECK_THROWS_AS(
        build_observables(spec, sys, "loschmidt", FlipSitesInit{{1}}),
        ConfigError);
    const auto obs = build_observables(spec, sys, "loschmidt", AllZeroInit{});
    const std::vector<StateVector> vac = {StateVector::zero_state(2),
                                          StateVector::zero_state(2)};
    CHECK(eval_obs(obs[0], vac) == doctest::Approx(1.0));
  }
}

TEST_CASE("layered first-order evolution") {
  SUBCASE("rejects hamiltonians outside the diagonal-plus-X structure") {
    const TrotterEvolver evolver(1.0, 4);
    CHECK_THROWS_AS(evolver.prepare(build_full(XXChainSpec{4, 0.5, 0.5, {}})),
                    std::invalid_argument);
  }
  SUBCASE("error shrinks linearly in the step size") {
    const PauliSum h = build_full(TfimSpec{4, 1.0, 1.5, {}});
    std::mt19937_64 gen(71);
    const StateVector psi = test::random_state(4, gen);
    const StateVector exact = evolve_dense(psi, h, 1.0);
    std::vector<double> errs;
    for (int steps : {4, 8, 16, 32}) {
      const TrotterEvolver evolver(1.0, steps);
      const auto prop = evolver.prepare(h);
      StateVector stepped = psi;
      prop->advance(stepped, 0.0, 1.0);
      CHECK(stepped.norm() == doctest::Approx(1.0).epsilon(1e-12));
      double diff = 0.0;
      for (std::size_t i = 0; i < psi.dim(); ++i) {
        diff = std::max(diff, std::abs(stepped.amps[i] - exact.amps[i]));
      }
      errs.push_back(diff);
    }
    for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
      const double ratio = errs[k + 1] / errs[k];
      CHECK(ratio > 0.3);
      CHECK(ratio < 0.7);
    }
  }
  SUBCASE("a step split by an insertion point composes its partial layers") {
    const PauliSum h = build_full(TfimSpec{2, 1.0, 0.7, {}});
    const TrotterEvolver evolver(1.0, 4);
    const auto prop = evolver.prepare(h);
    std::mt19937_64 gen(73);
    const StateVector psi = test::random_state(2, gen);
    StateVector split = psi;
    prop->advance(split, 0.0, 0.1);
    prop->advance(split, 0.1, 0.25);
    StateVector manual = psi;
    const auto layered = [&](StateVector& s, double tau) {
      PauliSum zz(2), xs(2);
      zz.add(1.0, PauliString::from_label(2, "ZZ"));
      xs.add(0.7, PauliString::single(2, 0, 'X'));
      xs.add(0.7, PauliString::single(2, 1, 'X'));
      s = evolve_dense(s, zz, tau);
      s = evolve_dense(s, xs, tau);
    };
    layered(manual, 0.1);
    layered(manual, 0.15);
    double diff = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      diff = std::max(diff, std::abs(split.amps[i] - manual.amps[i]));
    }
    CHECK(diff <= 1e-10);
  }
}

TEST_CASE("hubbard observables") {
  const FermiHubbardSpec spec{4, 0.5, 0.5, {}, {}, 1, 1};
  const PartitionedSystem sys = partition(spec, {4, 4});
  const auto states = build_initial(spec, sys, HubbardGroundInit{});

  const auto charge =
      build_observables(spec, sys, "charge_density", HubbardGroundInit{});
  const auto spin =
      build_observables(spec, sys, "spin_density", HubbardGroundInit{});
  const auto kappa = build_observables(spec, sys, "kappa", HubbardGroundInit{});
  REQUIRE(charge.size() == 4);
  REQUIRE(kappa.size() == 2);

  // kappa_c must equal the weighted sum of the charge densities.
  double weighted = 0.0;
  for (int j = 1; j <= 4; ++j) {
    weighted += std::abs(j - 2.5) * eval_obs(charge[j - 1], states);
  }
  CHECK(eval_obs(kappa[0], states) == doctest::Approx(weighted).epsilon(1e-10));

  // Total charge equals the particle number; total spin density vanishes
  // for symmetric filling.
  double total_c = 0.0, total_s = 0.0;
  for (int j = 0; j < 4; ++j) {
    total_c += eval_obs(charge[j], states);
    total_s += eval_obs(spin[j], states);
  }
  CHECK(total_c == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(total_s) <= 1e-10);
}
