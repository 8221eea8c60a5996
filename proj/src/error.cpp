#include "qimg/error.hpp"

namespace qimg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidImage: return "InvalidImage";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::NotAnNeqrState: return "NotAnNeqrState";
    case ErrorCode::NoMarkedItems: return "NoMarkedItems";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace qimg
