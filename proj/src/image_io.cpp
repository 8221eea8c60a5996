#include "qimg/image_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "qimg/error.hpp"

namespace qimg {
namespace {

constexpr int kMaxSide = 4096;

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token, skipping `#` comments.
  std::optional<std::string_view> token() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    return bytes_.substr(start, pos_ - start);
  }

  int integer(const char* what) {
    const auto tok = token();
    if (!tok) throw Error(ErrorCode::ParseError, std::string("missing ") + what);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok->data(), tok->data() + tok->size(), v);
    if (ec != std::errc{} || ptr != tok->data() + tok->size() || v < 0) {
      throw Error(ErrorCode::ParseError,
                  std::string("bad ") + what + " '" + std::string(*tok) + "'");
    }
    return v;
  }

  // P5: exactly one whitespace byte separates maxval from the raster.
  std::string_view raster() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw Error(ErrorCode::ParseError, "expected whitespace after maxval");
    }
    return bytes_.substr(pos_ + 1);
  }

  bool only_space_left() {
    skip_space_and_comments();
    return pos_ >= bytes_.size();
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::string_view bytes) {
  HeaderReader in(bytes);
  const auto magic = in.token();
  if (!magic || (*magic != "P2" && *magic != "P5")) {
    throw Error(ErrorCode::ParseError, "not a P2/P5 PGM file");
  }
  const bool binary = *magic == "P5";
  const int width = in.integer("width");
  const int height = in.integer("height");
  const int maxval = in.integer("maxval");
  if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide) {
    throw Error(ErrorCode::ParseError, "image dimensions out of range");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::ParseError, "maxval must be 255, got " + std::to_string(maxval));
  }

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels;
  pixels.reserve(count);
  if (binary) {
    const auto raster = in.raster();
    if (raster.size() < count) throw Error(ErrorCode::ParseError, "truncated P5 raster");
    for (std::size_t i = 0; i < count; ++i) pixels.push_back(static_cast<std::uint8_t>(raster[i]));
    HeaderReader tail(raster.substr(count));
    if (!tail.only_space_left()) throw Error(ErrorCode::ParseError, "trailing data after raster");
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = in.integer("pixel value");
      if (v > maxval) throw Error(ErrorCode::ParseError, "pixel value exceeds maxval");
      pixels.push_back(static_cast<std::uint8_t>(v));
    }
    if (!in.only_space_left()) throw Error(ErrorCode::ParseError, "trailing data after raster");
  }

  if (width != height) {
    throw Error(ErrorCode::InvalidImage, "image must be square, got " + std::to_string(width) +
                                             "x" + std::to_string(height));
  }
  return GrayImage(width, std::move(pixels));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  return parse_pgm(bytes);
}

std::string format_pgm(const GrayImage& image, PgmFormat format) {
  std::ostringstream out;
  const int side = image.side();
  out << (format == PgmFormat::Binary ? "P5" : "P2") << "\n" << side << " " << side << "\n255\n";
  if (format == PgmFormat::Binary) {
    for (auto v : image.pixels()) out.put(static_cast<char>(v));
  } else {
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        if (x) out << ' ';
        out << static_cast<int>(image.at(x, y));
      }
      out << '\n';
    }
  }
  return out.str();
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path, PgmFormat format) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  const std::string bytes = format_pgm(image, format);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file.flush()) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<DarkPixel> classical_scan(const GrayImage& image, const ThresholdConfig& config) {
  std::vector<DarkPixel> dark;
  for (int y = 0; y < image.side(); ++y) {
    for (int x = 0; x < image.side(); ++x) {
      const int v = image.at(x, y);
      if (config.is_dark(v)) dark.push_back(DarkPixel{x, y, v});
    }
  }
  return dark;
}

}  // namespace qimg
