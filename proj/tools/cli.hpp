#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace daff::cli {

// Exit codes: 0 all checks pass, 1 some check fails, 2 usage, parse or
// validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daff::cli
