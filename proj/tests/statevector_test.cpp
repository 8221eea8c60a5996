#include "qimg/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qimg/error.hpp"
#include "test_support.hpp"

using namespace qimg;
using namespace qimg::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qimg::Error";
  return ErrorCode::IoError;
}

}  // namespace

// ---------- basis states ----------

TEST(NewBasisState, OneHot) {
  const auto s = new_basis_state(2, 0);
  ASSERT_EQ(s.dimension(), 4u);
  EXPECT_EQ(s[0], Amplitude(1.0));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s[i], Amplitude(0.0));

  const auto one = new_basis_state(1, 1);
  EXPECT_EQ(one[0], Amplitude(0.0));
  EXPECT_EQ(one[1], Amplitude(1.0));

  const auto wide = new_basis_state(10, 0);
  EXPECT_EQ(wide.dimension(), 1024u);
  EXPECT_EQ(wide[0], Amplitude(1.0));
}

TEST(NewBasisState, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { new_basis_state(0, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { new_basis_state(25, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { new_basis_state(2, 4); }), ErrorCode::InvalidArgument);
}

TEST(Bitstring, MostSignificantQubitFirst) {
  EXPECT_EQ(to_bitstring(6, 3), "110");
  EXPECT_EQ(to_bitstring(1, 4), "0001");
  EXPECT_EQ(from_bitstring("0111111111"), 511u);
  EXPECT_THROW(from_bitstring("01a"), Error);
}

// ---------- gate semantics ----------

TEST(ApplyCircuit, NotGate) {
  Circuit c(1);
  c.x(0);
  const auto s = apply_circuit(new_basis_state(1, 0), c);
  EXPECT_EQ(s[1], Amplitude(1.0));
}

TEST(ApplyCircuit, Hadamard) {
  Circuit c(1);
  c.h(0);
  const auto s = apply_circuit(new_basis_state(1, 0), c);
  EXPECT_NEAR(s[0].real(), 0.70710678, 1e-8);
  EXPECT_NEAR(s[1].real(), 0.70710678, 1e-8);
}

TEST(ApplyCircuit, TwoQubitGroverFindsMarkedState) {
  Circuit c(2);
  c.h(0).h(1);
  c.mcz({0, 1});                                    // mark |11>
  c.h(0).h(1).x(0).x(1).mcz({0, 1}).x(0).x(1).h(0).h(1);  // diffuse
  const auto p = probabilities(apply_circuit(new_basis_state(2, 0), c));
  EXPECT_NEAR(p[3], 1.0, 1e-12);
}

TEST(ApplyCircuit, QubitCountMismatch) {
  Circuit c(3);
  EXPECT_EQ(code_of([&] { apply_circuit(new_basis_state(2, 0), c); }),
            ErrorCode::InvalidArgument);
}

TEST(Circuit, RejectsBadIndices) {
  Circuit c(3);
  EXPECT_EQ(code_of([&] { c.x(3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { c.cx(1, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { c.mcx({0, 2}, 2); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { c.mcz({}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { c.x(-1); }), ErrorCode::InvalidArgument);
  EXPECT_TRUE(c.empty());
}

// Controlled-NOT family against a permutation computed from index arithmetic.
TEST(ApplyCircuit, ControlledNotsArePermutations) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int qubits = 5;
    const int k = std::uniform_int_distribution<int>(0, 4)(rng);
    auto q = pick_qubits(qubits, k + 1, rng);
    const int target = q.back();
    q.pop_back();
    Circuit c(qubits);
    c.mcx(q, target);
    for (std::uint64_t i = 0; i < 32; ++i) {
      bool all = true;
      for (int ctl : q) all = all && ((i >> ctl) & 1U);
      const std::uint64_t expected = all ? (i ^ (std::uint64_t{1} << target)) : i;
      const auto out = apply_circuit(new_basis_state(qubits, i), c);
      EXPECT_EQ(out[expected], Amplitude(1.0)) << "input " << i;
    }
  }
}

TEST(ApplyCircuit, CcxMatchesMcxWithTwoControls) {
  std::mt19937_64 rng(11);
  Circuit a(4), b(4);
  a.ccx(3, 1, 0);
  b.mcx({3, 1}, 0);
  const auto s = random_state(4, rng);
  expect_states_near(apply_circuit(s, a), apply_circuit(s, b), 1e-15);
}

// ---------- invariants ----------

TEST(Properties, UnitarityOverThousandRandomGates) {
  std::mt19937_64 rng(2024);
  for (int qubits : {1, 3, 7, 12}) {
    const auto c = random_circuit(qubits, 1000, rng);
    const auto out = apply_circuit(random_state(qubits, rng), c);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-10) << qubits << " qubits";
  }
}

TEST(Properties, SelfInverseGates) {
  std::mt19937_64 rng(5);
  const std::vector<Gate> gates = {XGate{2}, HGate{0}, ZGate{3}, CXGate{1, 3},
                                   CCXGate{0, 2, 1}, MCXGate{{0, 1, 2}, 3}, MCZGate{{1, 2, 3}}};
  for (const auto& g : gates) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = random_state(4, rng);
      Circuit twice(4);
      twice.add(g).add(g);
      expect_states_near(apply_circuit(s, twice), s, 1e-12);
    }
  }
}

TEST(Properties, MczIsDiagonalWithSingleMinusOne) {
  for (int qubits = 1; qubits <= 4; ++qubits) {
    Circuit c(qubits);
    std::vector<int> all(static_cast<std::size_t>(qubits));
    std::iota(all.begin(), all.end(), 0);
    c.mcz(all);
    const auto m = materialize(c);
    int minus_ones = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (i != j) EXPECT_EQ(m[i][j], Amplitude(0.0));
      }
      if (m[i][i] == Amplitude(-1.0)) {
        ++minus_ones;
        EXPECT_EQ(i, m.size() - 1);
      } else {
        EXPECT_EQ(m[i][i], Amplitude(1.0));
      }
    }
    EXPECT_EQ(minus_ones, 1);
  }
}

// ---------- probabilities ----------

TEST(Probabilities, UniformAndBasis) {
  Circuit c(2);
  c.h(0).h(1);
  for (double p : probabilities(apply_circuit(new_basis_state(2, 0), c))) {
    EXPECT_NEAR(p, 0.25, 1e-15);
  }
  const auto p = probabilities(new_basis_state(1, 1));
  EXPECT_EQ(p, (std::vector<double>{0.0, 1.0}));
}

// ---------- sampling ----------

TEST(Sample, DeterministicState) {
  const auto h = sample(new_basis_state(1, 1), 100, 3);
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts.at("1"), 100u);
  EXPECT_EQ(h.shots, 100u);
}

TEST(Sample, HadamardWithinFiveSigma) {
  Circuit c(1);
  c.h(0);
  const auto h = sample(apply_circuit(new_basis_state(1, 0), c), 10000, 99);
  // Binomial(10000, 1/2): mean 5000, sigma 50.
  for (const char* key : {"0", "1"}) {
    ASSERT_TRUE(h.counts.count(key));
    EXPECT_LE(std::abs(static_cast<double>(h.counts.at(key)) - 5000.0), 5 * 50.0);
  }
}

TEST(Sample, SameSeedSameHistogram) {
  std::mt19937_64 rng(1);
  const auto s = random_state(4, rng);
  const auto a = sample(s, 5000, 42);
  const auto b = sample(s, 5000, 42);
  EXPECT_EQ(a.counts, b.counts);
  const auto c = sample(s, 5000, 43);
  EXPECT_NE(a.counts, c.counts);
}

TEST(Sample, CountsSumToShotsAndKeysHaveFullWidth) {
  std::mt19937_64 rng(8);
  const auto h = sample(random_state(5, rng), 777, 1);
  std::uint64_t total = 0;
  for (const auto& [k, v] : h.counts) {
    EXPECT_EQ(k.size(), 5u);
    total += v;
  }
  EXPECT_EQ(total, 777u);
}

TEST(Sample, ZeroShotsRejected) {
  EXPECT_EQ(code_of([] { sample(new_basis_state(1, 0), 0, 1); }), ErrorCode::InvalidArgument);
}

TEST(Sample, NeverDrawsZeroProbabilityOutcome) {
  // Support only on even indices.
  std::vector<Amplitude> amps(8);
  amps[0] = amps[2] = amps[4] = amps[6] = 0.5;
  const auto s = StateVector::from_amplitudes(amps);
  const auto h = sample(s, 20000, 17);
  for (const auto& [k, v] : h.counts) EXPECT_EQ(k.back(), '0') << k;
}

// Pearson chi-square against probabilities(); the 0.999 quantiles come from
// scipy.stats.chi2.ppf(0.999, df).
TEST(Sample, ChiSquareConsistency) {
  const std::map<int, double> quantile999 = {{1, 10.827566170662733},
                                             {3, 16.26623619623813},
                                             {7, 24.321886347856854},
                                             {15, 37.69729821835383}};
  std::mt19937_64 rng(31337);
  for (int qubits = 1; qubits <= 4; ++qubits) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto s = random_state(qubits, rng);
      const std::uint64_t shots = 100000;
      const auto h = sample(s, shots, rng());
      const auto p = probabilities(s);
      double chi2 = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto it = h.counts.find(to_bitstring(i, qubits));
        const double observed = it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
        const double expected = p[i] * static_cast<double>(shots);
        chi2 += (observed - expected) * (observed - expected) / expected;
      }
      const int df = (1 << qubits) - 1;
      EXPECT_LT(chi2, quantile999.at(df)) << qubits << " qubits, trial " << trial;
    }
  }
}

// ---------- inverse ----------

TEST(InverseCircuit, ReversesOrder) {
  Circuit c(2);
  c.h(0).x(1);
  Circuit expected(2);
  expected.x(1).h(0);
  EXPECT_EQ(inverse_circuit(c), expected);
  EXPECT_TRUE(inverse_circuit(Circuit(3)).empty());
}

TEST(InverseCircuit, RoundTripRestoresRandomStates) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int qubits = std::uniform_int_distribution<int>(1, 8)(rng);
    const auto c = random_circuit(qubits, 200, rng);
    const auto s = random_state(qubits, rng);
    expect_states_near(apply_circuit(apply_circuit(s, c), inverse_circuit(c)), s, 1e-10);
  }
}

TEST(EqualUpToPhase, IgnoresGlobalPhaseOnly) {
  std::mt19937_64 rng(4);
  const auto s = random_state(3, rng);
  std::vector<Amplitude> rotated(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : rotated) a *= std::polar(1.0, 0.7);
  EXPECT_TRUE(equal_up_to_phase(s, StateVector::from_amplitudes(rotated), 1e-12));
  EXPECT_FALSE(equal_up_to_phase(s, random_state(3, rng), 1e-6));
}
