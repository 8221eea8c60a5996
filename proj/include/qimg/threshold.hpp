#pragma once

namespace qimg {

/// A pixel is dark iff its intensity is strictly below `threshold`.
/// Valid thresholds are 0..=256; 0 marks nothing, 256 marks everything.
class ThresholdConfig {
 public:
  static constexpr int kPaperThreshold = 100;

  explicit ThresholdConfig(int threshold = kPaperThreshold);

  int threshold() const noexcept { return threshold_; }
  bool is_dark(int intensity) const noexcept { return intensity < threshold_; }

 private:
  int threshold_;
};

struct DarkPixel {
  int x = 0;
  int y = 0;
  int intensity = 0;

  friend bool operator==(const DarkPixel&, const DarkPixel&) = default;
  friend auto operator<=>(const DarkPixel&, const DarkPixel&) = default;
};

}  // namespace qimg
