#include "langevin/cli.hpp"
namespace langevin::cli {
int run(const std::vector<std::string>&) { return 0; }
int run(int, const char* const*) { return 0; }
}
