#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ulab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 verified or computed, 1 refuted, 2 usage or parse error,
// 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ulab::cli
