#pragma once

#include <cstdint>

namespace qimg {

/// Query counts for locating M marked states in a 2^n x 2^n image with q
/// intensity bits.
struct ComplexityReport {
  int n = 0;
  int q = 0;
  std::uint64_t marked = 0;
  std::uint64_t search_space = 0;           // 2^(q+2n)
  int grover_queries = 0;                   // iteration_count(N, M)
  std::uint64_t classical_comparisons = 0;  // 2^(2n), one per pixel
  // The literal O(2^n) and O(2^(2n+2m)) expressions, evaluated with m = n.
  // Their variables do not line up with the rest of the report, so they are
  // echoed as-is and flagged.
  std::uint64_t literal_grover = 0;
  std::uint64_t literal_classical = 0;
  bool literal_formulas_ambiguous = true;
};

/// Requires 1 <= n <= 15, q >= 1, q + 2n <= 62 and 1 <= M <= 2^(q+2n).
ComplexityReport complexity_report(int n, int q, std::uint64_t marked);

}  // namespace qimg
