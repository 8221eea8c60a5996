#pragma once

// Grover search and amplitude amplification over NEQR images.
//
// Three procedures are provided:
//
//  * Paper mode: uniform superposition over every intensity and position
//    qubit, phase oracle on the exact (intensity, position) bitstrings of the
//    dark pixels, standard diffuser. With one 2x2 image and three dark pixels
//    this is N = 1024, M = 3 and 14 iterations.
//  * Amplitude mode: start from the NEQR state A|0>, mark every basis state
//    whose intensity register is below the threshold, reflect about A|0>.
//  * Semiclassical mode: one small position-register Grover run per dark
//    pixel, with a phase-kickback ancilla.
//
// The number of dark pixels M is always obtained from a classical scan.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qimg/neqr.hpp"
#include "qimg/statevector.hpp"
#include "qimg/threshold.hpp"

namespace qimg {

enum class SearchMode { Paper, Amplitude, Semiclassical };

std::string_view to_string(SearchMode mode) noexcept;
/// "paper" | "amplitude" | "semiclassical"; throws InvalidArgument otherwise.
SearchMode parse_search_mode(std::string_view name);

struct GroverPlan {
  SearchMode mode = SearchMode::Paper;
  std::uint64_t search_space = 0;  // N
  std::uint64_t marked = 0;        // M
  int iterations = 0;              // k
};

struct RankedOutcome {
  std::uint64_t index = 0;
  std::string bitstring;
  DecodedOutcome pixel;
  /// The decoded intensity is the image's value at the decoded position.
  /// Paper mode spreads residual mass over raw outcomes where it is not.
  bool on_image = false;
  /// on_image and below the threshold.
  bool dark = false;
  double exact_probability = 0.0;
  std::uint64_t sampled_count = 0;
};

struct SearchResult {
  GroverPlan plan;
  /// Descending exact probability, ties by ascending index. Lists every basis
  /// state with probability above 1e-12 or a nonzero sampled count.
  std::vector<RankedOutcome> outcomes;
  /// Exact probability of measuring a dark pixel of the image.
  double total_dark_probability = 0.0;
  int oracle_invocations = 0;
  NeqrLayout layout;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Diagonal oracle: -1 on every basis state whose intensity register value is
/// below the threshold, position bits ignored. One X-conjugated MCZ over the
/// intensity register per marked value; consecutive values share their
/// conjugation so only differing bits are toggled between them.
Circuit build_threshold_oracle(const NeqrLayout& layout, const ThresholdConfig& config);

/// Diagonal oracle: -1 exactly on the listed basis states (MSB-first
/// bitstrings of length `total_qubits`). Empty set -> NoMarkedItems.
Circuit build_bitstring_oracle(int total_qubits, const std::set<std::string>& marked);

/// H^n X^n MCZ X^n H^n, which is -(2|u><u| - I).
Circuit build_diffuser_uniform(int total_qubits);

/// A (I - 2|0><0|) A^-1, i.e. the reflection about A|0> up to global phase.
Circuit build_diffuser_about(const Circuit& preparation);

/// floor(pi / (4 asin(sqrt(M/N)))). M = 0 -> NoMarkedItems, M > N -> InvalidArgument.
int iteration_count(std::uint64_t search_space, std::uint64_t marked);

/// sin^2((2k + 1) asin(sqrt(M/N))).
double success_probability(std::uint64_t search_space, std::uint64_t marked, int iterations);

/// Runs paper or amplitude mode on `image`. Semiclassical mode has its own
/// entry point and is rejected here.
SearchResult run_search(const GrayImage& image, const ThresholdConfig& config, SearchMode mode,
                        std::uint64_t shots, std::uint64_t seed);

struct SemiclassicalRun {
  DarkPixel pixel;
  /// Exact probability the final state assigns to the marked position.
  double marked_probability = 0.0;
  int iterations = 0;
  /// Measurements taken until the sampled position was the marked one.
  int attempts = 0;
};

/// Per-pixel Grover over the position register plus one ancilla.
/// For a 2x2 image this is the two-qubit circuit with a Toffoli onto an
/// ancilla in |->, one iteration, and certain success.
std::vector<SemiclassicalRun> run_semiclassical_search(const GrayImage& image,
                                                       const ThresholdConfig& config,
                                                       std::uint64_t seed);

/// Just the coordinates from run_semiclassical_search, in scan order.
std::vector<DarkPixel> semiclassical_pixels(const std::vector<SemiclassicalRun>& runs);

/// The circuit a single semiclassical run simulates for marked position
/// `position_index` (x | y << n) on a register of 2n position qubits plus an
/// ancilla at index 2n.
Circuit build_semiclassical_circuit(int n, std::uint64_t position_index);

}  // namespace qimg
