#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace remedysim {

// Exit codes: 0 success, 1 usage, 2 parse error, 3 semantic error (invalid
// scenario, unknown contract or good), 4 runtime failure.
enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kSemantic = 3, kRuntime = 4 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace remedysim
