#pragma once

// Dense statevector simulation for the small gate set used by NEQR
// preparation and Grover search.
//
// Bit convention: qubit 0 is the least-significant bit of a basis index.
// Bitstrings are rendered most-significant qubit first, so the basis index
// 6 on three qubits renders as "110".

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qimg {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;

struct XGate {
  int target;
  friend bool operator==(const XGate&, const XGate&) = default;
};
struct HGate {
  int target;
  friend bool operator==(const HGate&, const HGate&) = default;
};
struct ZGate {
  int target;
  friend bool operator==(const ZGate&, const ZGate&) = default;
};
struct CXGate {
  int control;
  int target;
  friend bool operator==(const CXGate&, const CXGate&) = default;
};
struct CCXGate {
  int control_a;
  int control_b;
  int target;
  friend bool operator==(const CCXGate&, const CCXGate&) = default;
};
/// NOT on `target` when every control is |1>. Zero controls degenerates to X.
struct MCXGate {
  std::vector<int> controls;
  int target;
  friend bool operator==(const MCXGate&, const MCXGate&) = default;
};
/// Phase -1 on the all-ones pattern of `qubits`, identity elsewhere.
struct MCZGate {
  std::vector<int> qubits;
  friend bool operator==(const MCZGate&, const MCZGate&) = default;
};

using Gate = std::variant<XGate, HGate, ZGate, CXGate, CCXGate, MCXGate, MCZGate>;

/// Every qubit index a gate touches, controls first, target last.
std::vector<int> gate_qubits(const Gate& gate);

/// Ordered gate list over a fixed register. Gates are validated on insertion,
/// so a Circuit value always respects its index bounds.
class Circuit {
 public:
  explicit Circuit(int qubit_count);

  int qubit_count() const noexcept { return qubit_count_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  Circuit& add(Gate gate);
  /// Appends every gate of `other`; qubit counts must match.
  Circuit& append(const Circuit& other);

  Circuit& x(int target) { return add(XGate{target}); }
  Circuit& h(int target) { return add(HGate{target}); }
  Circuit& z(int target) { return add(ZGate{target}); }
  Circuit& cx(int control, int target) { return add(CXGate{control, target}); }
  Circuit& ccx(int a, int b, int target) { return add(CCXGate{a, b, target}); }
  Circuit& mcx(std::vector<int> controls, int target) {
    return add(MCXGate{std::move(controls), target});
  }
  Circuit& mcz(std::vector<int> qubits) { return add(MCZGate{std::move(qubits)}); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int qubit_count_;
  std::vector<Gate> gates_;
};

class StateVector {
 public:
  /// |basis_index> on `qubit_count` qubits.
  static StateVector basis(int qubit_count, std::uint64_t basis_index);
  /// Takes ownership of raw amplitudes; length must be a power of two and the
  /// vector must be normalized within 1e-10.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  int qubit_count() const noexcept { return qubit_count_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const noexcept;

  /// In-place gate application; indices must be < qubit_count().
  void apply(const Gate& gate);

 private:
  StateVector(int qubit_count, std::vector<Amplitude> amplitudes)
      : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {}

  int qubit_count_;
  std::vector<Amplitude> amplitudes_;
};

/// Sampled measurement counts keyed by MSB-first bitstring.
struct Histogram {
  int qubit_count = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;
};

StateVector new_basis_state(int qubit_count, std::uint64_t basis_index);
StateVector apply_circuit(StateVector state, const Circuit& circuit);
std::vector<double> probabilities(const StateVector& state);
Histogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);
Circuit inverse_circuit(const Circuit& circuit);

std::string to_bitstring(std::uint64_t index, int width);
/// Inverse of to_bitstring; throws InvalidArgument on non-binary characters.
std::uint64_t from_bitstring(std::string_view bits);

/// Equal up to a global phase: after rotating `a` by the phase of <a|b>,
/// every amplitude differs from `b` by at most `tol`.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol);

}  // namespace qimg
