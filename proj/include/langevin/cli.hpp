#pragma once

#include <string>
#include <vector>

namespace langevin::cli {

// Exit codes: 0 success, 1 verdict false under --assert, 2 configuration
// error, 3 numerical error.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace langevin::cli
