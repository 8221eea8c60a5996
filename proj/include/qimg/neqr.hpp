#pragma once

// NEQR (novel enhanced quantum representation) of square grayscale images.
//
// A 2^n x 2^n image becomes
//
//   |I> = 1/2^n * sum_{y,x} |f(x, y)> |y x>
//
// over q intensity qubits and 2n position qubits. Register layout, qubit 0
// least significant:
//
//   intensity bit i  -> qubit i                 (0 <= i < q)
//   x bit j          -> qubit q + j             (0 <= j < n)
//   y bit j          -> qubit q + n + j         (0 <= j < n)
//
// so y is the most significant part of the index and an MSB-first bitstring
// reads  y-bits | x-bits | intensity-bits.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "qimg/statevector.hpp"

namespace qimg {

inline constexpr int kGrayscaleBits = 8;

/// Square, power-of-two side (>= 2) grid of 8-bit intensities, row-major.
class GrayImage {
 public:
  GrayImage(int side, std::vector<std::uint8_t> pixels);

  /// Row-major values, side inferred from the count: {0, 255, 65, 40} is 2x2.
  static GrayImage from_values(std::span<const int> row_major);
  static GrayImage from_values(std::initializer_list<int> row_major) {
    return from_values(std::span<const int>(row_major.begin(), row_major.size()));
  }

  int side() const noexcept { return side_; }
  /// log2(side)
  int n() const noexcept { return n_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y * side_ + x)]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int side_;
  int n_;
  std::vector<std::uint8_t> pixels_;
};

struct NeqrLayout {
  int n = 1;
  int q = kGrayscaleBits;

  /// Throws CapacityExceeded when q + 2n exceeds the simulator cap.
  static NeqrLayout for_image(const GrayImage& image, int intensity_bits = kGrayscaleBits);

  int total_qubits() const noexcept { return q + 2 * n; }
  int side() const noexcept { return 1 << n; }
  int intensity_qubit(int i) const noexcept { return i; }
  int x_qubit(int j) const noexcept { return q + j; }
  int y_qubit(int j) const noexcept { return q + n + j; }
  std::vector<int> intensity_qubits() const;
  /// x qubits then y qubits, ascending.
  std::vector<int> position_qubits() const;

  std::uint64_t position_index(int x, int y) const noexcept {
    return static_cast<std::uint64_t>(x) | (static_cast<std::uint64_t>(y) << n);
  }
  std::uint64_t basis_index(int x, int y, unsigned intensity) const noexcept {
    return static_cast<std::uint64_t>(intensity) | (position_index(x, y) << q);
  }

  friend bool operator==(const NeqrLayout&, const NeqrLayout&) = default;
};

struct PreparedImage {
  NeqrLayout layout;
  Circuit circuit;
  GrayImage source;
};

struct DecodedOutcome {
  int x = 0;
  int y = 0;
  int intensity = 0;

  friend bool operator==(const DecodedOutcome&, const DecodedOutcome&) = default;
};

/// Preparation circuit: H on every position qubit, then for each nonzero
/// pixel an MCX per set intensity bit, controlled on the full position
/// register with zero-valued position bits X-conjugated. Zero pixels emit
/// nothing.
///
/// `intensity_bits` below 8 is a reduced-register mode for brute-force tests;
/// it requires every pixel to fit in that many bits.
PreparedImage encode_neqr(const GrayImage& image, int intensity_bits = kGrayscaleBits);

/// Simulates the preparation circuit from |0...0>.
StateVector prepare_state(const PreparedImage& prepared);

DecodedOutcome decode_outcome(std::string_view bits, const NeqrLayout& layout);
DecodedOutcome decode_index(std::uint64_t index, const NeqrLayout& layout);

/// Reads the image back from an NEQR state. Each position must carry exactly
/// one intensity branch with magnitude above 1e-6, else NotAnNeqrState.
GrayImage reconstruct_image(const StateVector& state, const NeqrLayout& layout);

}  // namespace qimg
