#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathkit::cli {

// Exit codes returned by run().
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kDomain = 3;
inline constexpr int kAccuracy = 4;

// args excludes the program name. CSV goes to `out` unless --out is given;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathkit::cli
