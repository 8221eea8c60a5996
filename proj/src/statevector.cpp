#include "qimg/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "qimg/error.hpp"

namespace qimg {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t bit(int qubit) { return std::uint64_t{1} << qubit; }

std::uint64_t mask_of(std::span<const int> qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= bit(q);
  return m;
}

// Flip `target` on every index whose `controls` bits are all set.
void controlled_not(std::vector<Amplitude>& amps, std::uint64_t controls,
                    std::uint64_t target) {
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & target) == 0 && (i & controls) == controls) {
      std::swap(amps[i], amps[i | target]);
    }
  }
}

void phase_flip(std::vector<Amplitude>& amps, std::uint64_t mask) {
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) amps[i] = -amps[i];
  }
}

void hadamard(std::vector<Amplitude>& amps, std::uint64_t target) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & target) continue;
    const Amplitude a = amps[i];
    const Amplitude b = amps[i | target];
    amps[i] = (a + b) * s;
    amps[i | target] = (a - b) * s;
  }
}

void validate(const Gate& gate, int qubit_count) {
  const auto qubits = gate_qubits(gate);
  if (const auto* g = std::get_if<MCZGate>(&gate); g && g->qubits.empty()) {
    throw Error(ErrorCode::InvalidArgument, "MCZ needs at least one qubit");
  }
  for (int q : qubits) {
    if (q < 0 || q >= qubit_count) {
      throw Error(ErrorCode::InvalidArgument,
                  "qubit index " + std::to_string(q) + " outside register of " +
                      std::to_string(qubit_count));
    }
  }
  auto sorted = qubits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "repeated qubit index within a gate");
  }
}

}  // namespace

std::vector<int> gate_qubits(const Gate& gate) {
  return std::visit(
      Overloaded{
          [](const XGate& g) { return std::vector<int>{g.target}; },
          [](const HGate& g) { return std::vector<int>{g.target}; },
          [](const ZGate& g) { return std::vector<int>{g.target}; },
          [](const CXGate& g) { return std::vector<int>{g.control, g.target}; },
          [](const CCXGate& g) {
            return std::vector<int>{g.control_a, g.control_b, g.target};
          },
          [](const MCXGate& g) {
            auto v = g.controls;
            v.push_back(g.target);
            return v;
          },
          [](const MCZGate& g) { return g.qubits; },
      },
      gate);
}

Circuit::Circuit(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 1 || qubit_count > kMaxQubits) {
    throw Error(ErrorCode::InvalidArgument,
                "qubit count must be in 1.." + std::to_string(kMaxQubits));
  }
}

Circuit& Circuit::add(Gate gate) {
  validate(gate, qubit_count_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.qubit_count_ != qubit_count_) {
    throw Error(ErrorCode::InvalidArgument, "cannot append circuits of different width");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

StateVector StateVector::basis(int qubit_count, std::uint64_t basis_index) {
  if (qubit_count < 1 || qubit_count > kMaxQubits) {
    throw Error(ErrorCode::InvalidArgument,
                "qubit count must be in 1.." + std::to_string(kMaxQubits));
  }
  const std::uint64_t dim = bit(qubit_count);
  if (basis_index >= dim) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  std::vector<Amplitude> amps(dim);
  amps[basis_index] = 1.0;
  return StateVector(qubit_count, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "amplitude count must be a power of two >= 2");
  }
  const int qubits = std::countr_zero(dim);
  if (qubits > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded, "state exceeds qubit cap");
  }
  double norm = 0.0;
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
    }
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "amplitudes are not normalized");
  }
  return StateVector(qubits, std::move(amplitudes));
}

double StateVector::norm_squared() const noexcept {
  return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                         [](double acc, const Amplitude& a) { return acc + std::norm(a); });
}

void StateVector::apply(const Gate& gate) {
  validate(gate, qubit_count_);
  std::visit(Overloaded{
                 [&](const XGate& g) { controlled_not(amplitudes_, 0, bit(g.target)); },
                 [&](const HGate& g) { hadamard(amplitudes_, bit(g.target)); },
                 [&](const ZGate& g) { phase_flip(amplitudes_, bit(g.target)); },
                 [&](const CXGate& g) {
                   controlled_not(amplitudes_, bit(g.control), bit(g.target));
                 },
                 [&](const CCXGate& g) {
                   controlled_not(amplitudes_, bit(g.control_a) | bit(g.control_b),
                                  bit(g.target));
                 },
                 [&](const MCXGate& g) {
                   controlled_not(amplitudes_, mask_of(g.controls), bit(g.target));
                 },
                 [&](const MCZGate& g) { phase_flip(amplitudes_, mask_of(g.qubits)); },
             },
             gate);
}

StateVector new_basis_state(int qubit_count, std::uint64_t basis_index) {
  return StateVector::basis(qubit_count, basis_index);
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  if (state.qubit_count() != circuit.qubit_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "state has " + std::to_string(state.qubit_count()) +
                    " qubits but circuit has " + std::to_string(circuit.qubit_count()));
  }
  for (const auto& gate : circuit.gates()) state.apply(gate);
  return state;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p;
  p.reserve(state.dimension());
  for (const auto& a : state.amplitudes()) p.push_back(std::norm(a));
  return p;
}

Histogram sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");

  const auto p = probabilities(state);
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  const double total = cdf.back();

  // Inverse-CDF draws from mt19937_64 with a hand-rolled 53-bit uniform, so
  // the histogram is identical across standard library implementations.
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> tally(p.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    auto idx = static_cast<std::size_t>(it - cdf.begin());
    // Rounding at the top of the CDF can run past the last nonzero bin.
    if (idx >= p.size()) idx = p.size() - 1;
    while (p[idx] == 0.0 && idx > 0) --idx;
    ++tally[idx];
  }

  Histogram hist{state.qubit_count(), shots, {}};
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i] > 0) hist.counts.emplace(to_bitstring(i, state.qubit_count()), tally[i]);
  }
  return hist;
}

Circuit inverse_circuit(const Circuit& circuit) {
  // Every supported gate is self-inverse.
  Circuit inverse(circuit.qubit_count());
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    inverse.add(*it);
  }
  return inverse;
}

std::string to_bitstring(std::uint64_t index, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q) {
    if (index & bit(q)) s[static_cast<std::size_t>(width - 1 - q)] = '1';
  }
  return s;
}

std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 63) {
    throw Error(ErrorCode::InvalidArgument, "bitstring length out of range");
  }
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::InvalidArgument, "bitstring may only contain 0 and 1");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return value;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dimension() != b.dimension()) return false;
  Amplitude overlap = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) overlap += std::conj(a[i]) * b[i];
  const double mag = std::abs(overlap);
  const Amplitude phase = mag > 0.0 ? overlap / mag : Amplitude{1.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (std::abs(a[i] * phase - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace qimg
