#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;  // unexpected mathematical finding, failed check or IO error
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperel
