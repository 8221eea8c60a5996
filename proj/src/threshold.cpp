#include "qimg/threshold.hpp"

#include <string>

#include "qimg/error.hpp"

namespace qimg {

ThresholdConfig::ThresholdConfig(int threshold) : threshold_(threshold) {
  if (threshold < 0 || threshold > 256) {
    throw Error(ErrorCode::InvalidArgument,
                "threshold must be in 0..256, got " + std::to_string(threshold));
  }
}

}  // namespace qimg
