#include "qimg/complexity.hpp"

#include "qimg/error.hpp"
#include "qimg/grover.hpp"

namespace qimg {

ComplexityReport complexity_report(int n, int q, std::uint64_t marked) {
  if (n < 1 || n > 15) throw Error(ErrorCode::InvalidArgument, "n must be in 1..15");
  if (q < 1 || q + 2 * n > 62) throw Error(ErrorCode::InvalidArgument, "q out of range");
  const std::uint64_t space = std::uint64_t{1} << (q + 2 * n);
  if (marked < 1 || marked > space) {
    throw Error(ErrorCode::InvalidArgument, "marked count must be in 1..2^(q+2n)");
  }

  ComplexityReport r;
  r.n = n;
  r.q = q;
  r.marked = marked;
  r.search_space = space;
  r.grover_queries = iteration_count(space, marked);
  r.classical_comparisons = std::uint64_t{1} << (2 * n);
  r.literal_grover = std::uint64_t{1} << n;
  r.literal_classical = std::uint64_t{1} << (4 * n);  // 2^(2n+2m), m = n
  return r;
}

}  // namespace qimg
