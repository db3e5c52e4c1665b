#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace risklab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable overriding the default sample count.
inline constexpr const char* kSamplesEnv = "RISKLAB_SAMPLES";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace risklab::cli
