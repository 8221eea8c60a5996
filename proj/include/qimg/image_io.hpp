#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qimg/neqr.hpp"
#include "qimg/threshold.hpp"

namespace qimg {

enum class PgmFormat { Ascii, Binary };  // P2, P5

/// Netpbm grayscale, maxval exactly 255, `#` comments allowed in the header.
/// Malformed input -> ParseError; non-square or non-power-of-two -> InvalidImage.
GrayImage parse_pgm(std::string_view bytes);
GrayImage load_pgm(const std::filesystem::path& path);

std::string format_pgm(const GrayImage& image, PgmFormat format);
void save_pgm(const GrayImage& image, const std::filesystem::path& path, PgmFormat format);

/// Every pixel with intensity < threshold, row-major.
std::vector<DarkPixel> classical_scan(const GrayImage& image, const ThresholdConfig& config);

}  // namespace qimg
