#include "qimg/neqr.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qimg/error.hpp"

namespace qimg {

GrayImage::GrayImage(int side, std::vector<std::uint8_t> pixels)
    : side_(side), n_(0), pixels_(std::move(pixels)) {
  if (side < 2 || !std::has_single_bit(static_cast<unsigned>(side))) {
    throw Error(ErrorCode::InvalidImage,
                "side must be a power of two >= 2, got " + std::to_string(side));
  }
  if (pixels_.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
    throw Error(ErrorCode::InvalidImage, "pixel count does not match side*side");
  }
  n_ = std::countr_zero(static_cast<unsigned>(side));
}

GrayImage GrayImage::from_values(std::span<const int> row_major) {
  const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(row_major.size()))));
  if (static_cast<std::size_t>(side) * static_cast<std::size_t>(side) != row_major.size()) {
    throw Error(ErrorCode::InvalidImage, "value count is not a perfect square");
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(row_major.size());
  for (int v : row_major) {
    if (v < 0 || v > 255) throw Error(ErrorCode::InvalidImage, "intensity outside 0..255");
    pixels.push_back(static_cast<std::uint8_t>(v));
  }
  return GrayImage(side, std::move(pixels));
}

NeqrLayout NeqrLayout::for_image(const GrayImage& image, int intensity_bits) {
  if (intensity_bits < 1 || intensity_bits > kGrayscaleBits) {
    throw Error(ErrorCode::InvalidArgument, "intensity bits must be in 1..8");
  }
  NeqrLayout layout{image.n(), intensity_bits};
  if (layout.total_qubits() > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded,
                std::to_string(layout.total_qubits()) + " qubits needed, cap is " +
                    std::to_string(kMaxQubits));
  }
  return layout;
}

std::vector<int> NeqrLayout::intensity_qubits() const {
  std::vector<int> v;
  for (int i = 0; i < q; ++i) v.push_back(intensity_qubit(i));
  return v;
}

std::vector<int> NeqrLayout::position_qubits() const {
  std::vector<int> v;
  for (int j = 0; j < 2 * n; ++j) v.push_back(q + j);
  return v;
}

PreparedImage encode_neqr(const GrayImage& image, int intensity_bits) {
  const NeqrLayout layout = NeqrLayout::for_image(image, intensity_bits);
  const auto position = layout.position_qubits();

  Circuit circuit(layout.total_qubits());
  for (int qb : position) circuit.h(qb);

  for (int y = 0; y < image.side(); ++y) {
    for (int x = 0; x < image.side(); ++x) {
      const unsigned value = image.at(x, y);
      if (value == 0) continue;
      if (value >> layout.q) {
        throw Error(ErrorCode::InvalidImage,
                    "intensity " + std::to_string(value) + " does not fit in " +
                        std::to_string(layout.q) + " bits");
      }
      // Select this position: zero bits of (y x) are flipped so the
      // all-ones control pattern matches only here.
      const std::uint64_t pos = layout.position_index(x, y);
      auto conjugate = [&] {
        for (std::size_t j = 0; j < position.size(); ++j) {
          if (((pos >> j) & 1U) == 0) circuit.x(position[j]);
        }
      };
      conjugate();
      for (int i = 0; i < layout.q; ++i) {
        if ((value >> i) & 1U) circuit.mcx(position, layout.intensity_qubit(i));
      }
      conjugate();
    }
  }
  return PreparedImage{layout, std::move(circuit), image};
}

StateVector prepare_state(const PreparedImage& prepared) {
  return apply_circuit(StateVector::basis(prepared.layout.total_qubits(), 0), prepared.circuit);
}

DecodedOutcome decode_index(std::uint64_t index, const NeqrLayout& layout) {
  const std::uint64_t intensity_mask = (std::uint64_t{1} << layout.q) - 1;
  const std::uint64_t coord_mask = (std::uint64_t{1} << layout.n) - 1;
  return DecodedOutcome{
      static_cast<int>((index >> layout.q) & coord_mask),
      static_cast<int>((index >> (layout.q + layout.n)) & coord_mask),
      static_cast<int>(index & intensity_mask),
  };
}

DecodedOutcome decode_outcome(std::string_view bits, const NeqrLayout& layout) {
  if (bits.size() != static_cast<std::size_t>(layout.total_qubits())) {
    throw Error(ErrorCode::InvalidArgument,
                "bitstring has length " + std::to_string(bits.size()) + ", layout needs " +
                    std::to_string(layout.total_qubits()));
  }
  return decode_index(from_bitstring(bits), layout);
}

GrayImage reconstruct_image(const StateVector& state, const NeqrLayout& layout) {
  if (state.qubit_count() != layout.total_qubits()) {
    throw Error(ErrorCode::InvalidArgument, "state width does not match layout");
  }
  constexpr double kZeroTolerance = 1e-6;
  const int side = layout.side();
  std::vector<int> found(static_cast<std::size_t>(side * side), -1);

  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (std::abs(state[i]) <= kZeroTolerance) continue;
    const auto d = decode_index(i, layout);
    auto& slot = found[static_cast<std::size_t>(d.y * side + d.x)];
    if (slot != -1) {
      throw Error(ErrorCode::NotAnNeqrState,
                  "position (" + std::to_string(d.x) + ", " + std::to_string(d.y) +
                      ") has more than one intensity branch");
    }
    slot = d.intensity;
  }

  std::vector<std::uint8_t> pixels;
  pixels.reserve(found.size());
  for (std::size_t p = 0; p < found.size(); ++p) {
    if (found[p] < 0) {
      throw Error(ErrorCode::NotAnNeqrState,
                  "pixel " + std::to_string(p) + " has no intensity branch");
    }
    pixels.push_back(static_cast<std::uint8_t>(found[p]));
  }
  return GrayImage(side, std::move(pixels));
}

}  // namespace qimg
