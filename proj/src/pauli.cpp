#include "pqs/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace pqs {

namespace {

// Pauli masks are 64-bit; dense amplitude storage stops much earlier.
void check_register(int n) {
  if (n < 0 || n > 64) {
    throw std::invalid_argument("register size out of range: " +
                                std::to_string(n));
  }
}

void check_dense_register(int n) {
  if (n < 0 || n > 28) {
    throw std::invalid_argument("statevector register out of range: " +
                                std::to_string(n));
  }
}

// i^k for k = popcount(x & z) mod 4; folds the Y = i*X*Z phase.
complexd y_phase(const PauliString& p) {
  static const complexd table[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return table[std::popcount(p.x_mask & p.z_mask) & 3];
}

inline double z_sign(std::uint64_t basis, std::uint64_t z_mask) {
  return (std::popcount(basis & z_mask) & 1) ? -1.0 : 1.0;
}

}  // namespace

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z)
    : n_qubits(n), x_mask(x), z_mask(z) {
  check_register(n);
  const std::uint64_t valid =
      n == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
  if ((x & ~valid) != 0 || (z & ~valid) != 0) {
    throw std::invalid_argument("Pauli mask uses bits beyond the register");
  }
}

PauliString PauliString::single(int n, int qubit, char axis) {
  if (qubit < 0 || qubit >= n) {
    throw std::invalid_argument("qubit index out of range");
  }
  const std::uint64_t bit = std::uint64_t(1) << qubit;
  switch (axis) {
    case 'X':
      return PauliString(n, bit, 0);
    case 'Y':
      return PauliString(n, bit, bit);
    case 'Z':
      return PauliString(n, 0, bit);
    default:
      throw std::invalid_argument("Pauli axis must be X, Y or Z");
  }
}

PauliString PauliString::from_label(int n, const std::string& label) {
  if (static_cast<int>(label.size()) != n) {
    throw std::invalid_argument("label length does not match register");
  }
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t(1) << q;
    switch (label[q]) {
      case 'I':
        break;
      case 'X':
        x |= bit;
        break;
      case 'Y':
        x |= bit;
        z |= bit;
        break;
      case 'Z':
        z |= bit;
        break;
      default:
        throw std::invalid_argument("label characters must be I, X, Y or Z");
    }
  }
  return PauliString(n, x, z);
}

std::string PauliString::label() const {
  std::string out(n_qubits, 'I');
  for (int q = 0; q < n_qubits; ++q) {
    const bool x = (x_mask >> q) & 1, z = (z_mask >> q) & 1;
    if (x && z)
      out[q] = 'Y';
    else if (x)
      out[q] = 'X';
    else if (z)
      out[q] = 'Z';
  }
  return out;
}

void PauliSum::add(double coeff, const PauliString& str) {
  if (n_qubits_ == 0 && terms_.empty()) n_qubits_ = str.n_qubits;
  if (str.n_qubits != n_qubits_) {
    throw std::invalid_argument("Pauli term register mismatch");
  }
  if (coeff == 0.0) return;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].str == str) {
      terms_[i].coeff += coeff;
      if (terms_[i].coeff == 0.0) terms_.erase(terms_.begin() + i);
      return;
    }
  }
  terms_.push_back({coeff, str});
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& t : other.terms()) add(t.coeff, t.str);
  return *this;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

StateVector StateVector::zero_state(int n) { return basis_state(n, 0); }

StateVector StateVector::basis_state(int n, std::uint64_t index) {
  check_dense_register(n);
  StateVector psi(n);
  if (index >= psi.dim()) {
    throw std::invalid_argument("basis index out of range");
  }
  psi.amps[index] = 1.0;
  return psi;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  for (auto& a : amps) a /= n;
}

complexd inner(const StateVector& bra, const StateVector& ket) {
  if (bra.n_qubits != ket.n_qubits) {
    throw std::invalid_argument("inner product register mismatch");
  }
  complexd s = 0.0;
  for (std::size_t i = 0; i < bra.amps.size(); ++i) {
    s += std::conj(bra.amps[i]) * ket.amps[i];
  }
  return s;
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  StateVector out = state;
  apply_pauli_inplace(out, p);
  return out;
}

void apply_pauli_inplace(StateVector& state, const PauliString& p) {
  if (p.n_qubits != state.n_qubits) {
    throw std::invalid_argument("apply_pauli register mismatch");
  }
  const complexd ph = y_phase(p);
  const std::uint64_t x = p.x_mask, z = p.z_mask;
  complexd* a = state.amps.data();
  const std::size_t dim = state.dim();
  if (x == 0) {
    for (std::size_t b = 0; b < dim; ++b) a[b] *= ph * z_sign(b, z);
    return;
  }
  // x != 0: amplitudes swap in pairs (b, b^x); visit each pair once.
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t c = b ^ x;
    if (c < b) continue;
    const complexd vb = a[b], vc = a[c];
    a[c] = ph * z_sign(b, z) * vb;
    a[b] = ph * z_sign(c, z) * vc;
  }
}

StateVector apply_pauli_sum(const StateVector& state, const PauliSum& h) {
  StateVector out(state.n_qubits);
  apply_pauli_sum_into(state, h, out);
  return out;
}

void apply_pauli_sum_into(const StateVector& state, const PauliSum& h,
                          StateVector& out) {
  if (h.n_qubits() != state.n_qubits) {
    throw std::invalid_argument("apply_pauli_sum register mismatch");
  }
  if (out.n_qubits != state.n_qubits) out = StateVector(state.n_qubits);
  std::fill(out.amps.begin(), out.amps.end(), complexd(0.0));
  const std::size_t dim = state.dim();
  const complexd* in = state.amps.data();
  complexd* acc = out.amps.data();
  for (const auto& term : h.terms()) {
    const complexd c = term.coeff * y_phase(term.str);
    const std::uint64_t x = term.str.x_mask, z = term.str.z_mask;
    if (x == 0) {
      for (std::size_t b = 0; b < dim; ++b) acc[b] += c * z_sign(b, z) * in[b];
    } else {
      for (std::size_t b = 0; b < dim; ++b) {
        acc[b ^ x] += c * z_sign(b, z) * in[b];
      }
    }
  }
}

complexd pauli_bilinear(const StateVector& bra, const PauliString& p,
                        const StateVector& ket) {
  if (bra.n_qubits != ket.n_qubits || p.n_qubits != ket.n_qubits) {
    throw std::invalid_argument("bilinear register mismatch");
  }
  const complexd ph = y_phase(p);
  const std::uint64_t x = p.x_mask, z = p.z_mask;
  const complexd* b = bra.amps.data();
  const complexd* k = ket.amps.data();
  complexd s = 0.0;
  for (std::size_t i = 0; i < ket.dim(); ++i) {
    s += std::conj(b[i ^ x]) * (z_sign(i, z) * k[i]);
  }
  return ph * s;
}

complexd bilinear(const StateVector& bra, const LocalOp& op,
                  const StateVector& ket) {
  if (bra.n_qubits != ket.n_qubits) {
    throw std::invalid_argument("bilinear register mismatch");
  }
  if (std::holds_alternative<IdentityOp>(op)) return inner(bra, ket);
  if (const auto* proj = std::get_if<BasisProjector>(&op)) {
    if (proj->basis_index >= ket.dim()) {
      throw std::invalid_argument("projector basis index out of range");
    }
    return std::conj(bra.amps[proj->basis_index]) *
           ket.amps[proj->basis_index];
  }
  const auto& sum = std::get<PauliSum>(op);
  complexd s = 0.0;
  for (const auto& term : sum.terms()) {
    s += term.coeff * pauli_bilinear(bra, term.str, ket);
  }
  return s;
}

}  // namespace pqs
