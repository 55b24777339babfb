#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace pqs {

using complexd = std::complex<double>;

/// Cache-line aligned storage keeps SIMD reduction order independent of
/// where the allocator happens to place a buffer, which in turn keeps
/// results bit-identical across runs and worker counts.
template <typename T, std::size_t Alignment>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) {}
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };
  T* allocate(std::size_t n) {
    return static_cast<T*>(
        ::operator new(n * sizeof(T), std::align_val_t(Alignment)));
  }
  void deallocate(T* p, std::size_t) {
    ::operator delete(p, std::align_val_t(Alignment));
  }
  bool operator==(const AlignedAllocator&) const { return true; }
  bool operator!=(const AlignedAllocator&) const { return false; }
};

using AmpVector = std::vector<complexd, AlignedAllocator<complexd, 64>>;

/// Tensor product of single-qubit Pauli operators in symplectic encoding.
///
/// Qubit q carries an X factor iff bit q of x_mask is set and a Z factor iff
/// bit q of z_mask is set. Both bits set means sigma^y; its intrinsic factor
/// of i is folded into the application routines, so the stored operator is
/// always Hermitian and unitary. Qubit 0 is the least significant bit
/// everywhere in this codebase.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliString() = default;
  PauliString(int n, std::uint64_t x, std::uint64_t z);

  static PauliString identity(int n) { return PauliString(n, 0, 0); }
  /// Single-site operator; axis is one of 'X', 'Y', 'Z'.
  static PauliString single(int n, int qubit, char axis);
  /// Build from a label like "XIZY"; character k acts on qubit k.
  static PauliString from_label(int n, const std::string& label);

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  /// Number of qubits acted on non-trivially.
  int weight() const { return std::popcount(x_mask | z_mask); }
  bool operator==(const PauliString& o) const = default;

  std::string label() const;
};

/// Real-weighted sum of Pauli strings on a common register (a Hermitian
/// operator). add() merges duplicate strings and drops terms whose merged
/// coefficient is exactly zero; term order is insertion order.
class PauliSum {
 public:
  struct Term {
    double coeff;
    PauliString str;
  };

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(double coeff, const PauliString& str);
  PauliSum& operator+=(const PauliSum& other);

  /// Sum of absolute coefficients (an upper bound on the operator norm).
  double one_norm() const;

 private:
  int n_qubits_ = 0;
  std::vector<Term> terms_;
};

/// Dense complex state vector, little-endian basis ordering.
struct StateVector {
  int n_qubits = 0;
  AmpVector amps;

  StateVector() = default;
  explicit StateVector(int n) : n_qubits(n), amps(std::size_t(1) << n) {}

  static StateVector zero_state(int n);
  static StateVector basis_state(int n, std::uint64_t index);

  std::size_t dim() const { return amps.size(); }
  double norm() const;
  void normalize();
};

/// <bra|ket> with the conjugate taken on bra.
complexd inner(const StateVector& bra, const StateVector& ket);

/// P|psi> as a new state; norm is preserved exactly up to floating point.
StateVector apply_pauli(const StateVector& state, const PauliString& p);
void apply_pauli_inplace(StateVector& state, const PauliString& p);

/// (sum_k c_k P_k)|psi> without materializing a matrix.
StateVector apply_pauli_sum(const StateVector& state, const PauliSum& h);
/// Same, writing into a preallocated output buffer (out may not alias state).
void apply_pauli_sum_into(const StateVector& state, const PauliSum& h,
                          StateVector& out);

/// Tag for the literal identity operator in bilinear forms.
struct IdentityOp {};

/// Rank-one projector |s><s| onto a computational basis state.
struct BasisProjector {
  std::uint64_t basis_index = 0;
};

/// Local operator accepted by bilinear(): identity, a Pauli sum, or a
/// computational-basis projector.
using LocalOp = std::variant<IdentityOp, PauliSum, BasisProjector>;

/// <bra|P|ket> for a single Pauli string, evaluated without temporaries.
complexd pauli_bilinear(const StateVector& bra, const PauliString& p,
                        const StateVector& ket);

/// <bra|O|ket>, both real and imaginary parts.
complexd bilinear(const StateVector& bra, const LocalOp& op,
                  const StateVector& ket);

}  // namespace pqs
