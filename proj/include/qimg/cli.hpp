#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qimg {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Exit codes: 0 success, 1 usage error, 2 input/parse error,
/// 3 capacity exceeded or nothing to search for.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qimg
