#pragma once

// Matrix and random-circuit helpers shared by the unit tests and the
// acceptance binary. Everything here works from first principles (explicit
// matrices, direct index arithmetic) so it can serve as an oracle for the
// gate kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qimg/statevector.hpp"

namespace qimg::testing {

using Matrix = std::vector<std::vector<Amplitude>>;  // [row][col]

/// Column j is circuit applied to |j>.
inline Matrix materialize(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.qubit_count();
  Matrix m(dim, std::vector<Amplitude>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    const auto col = apply_circuit(StateVector::basis(c.qubit_count(), j), c);
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = col[i];
  }
  return m;
}

/// max |a - phase * b| after choosing the phase from the largest entry of b.
inline double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (std::abs(b[i][j]) > best) { best = std::abs(b[i][j]); bi = i; bj = j; }
    }
  }
  const Amplitude phase = a[bi][bj] / b[bi][bj];
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      worst = std::max(worst, std::abs(a[i][j] - phase * b[i][j]));
    }
  }
  return worst;
}

inline StateVector random_state(int qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(amps));
}

/// Distinct qubit indices drawn from [0, qubits).
inline std::vector<int> pick_qubits(int qubits, int count, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(qubits));
  for (int i = 0; i < qubits; ++i) all[static_cast<std::size_t>(i)] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(count));
  return all;
}

inline Gate random_gate(int qubits, std::mt19937_64& rng) {
  const int max_kind = qubits >= 3 ? 7 : (qubits == 2 ? 4 : 3);
  const int kind = std::uniform_int_distribution<int>(0, max_kind - 1)(rng);
  switch (kind) {
    case 0: return XGate{pick_qubits(qubits, 1, rng)[0]};
    case 1: return HGate{pick_qubits(qubits, 1, rng)[0]};
    case 2: return ZGate{pick_qubits(qubits, 1, rng)[0]};
    case 3: { auto q = pick_qubits(qubits, 2, rng); return CXGate{q[0], q[1]}; }
    case 4: { auto q = pick_qubits(qubits, 3, rng); return CCXGate{q[0], q[1], q[2]}; }
    case 5: {
      const int k = std::uniform_int_distribution<int>(2, qubits)(rng);
      auto q = pick_qubits(qubits, k, rng);
      const int target = q.back();
      q.pop_back();
      return MCXGate{q, target};
    }
    default: {
      const int k = std::uniform_int_distribution<int>(1, qubits)(rng);
      return MCZGate{pick_qubits(qubits, k, rng)};
    }
  }
}

inline Circuit random_circuit(int qubits, int gates, std::mt19937_64& rng) {
  Circuit c(qubits);
  for (int i = 0; i < gates; ++i) c.add(random_gate(qubits, rng));
  return c;
}

}  // namespace qimg::testing
