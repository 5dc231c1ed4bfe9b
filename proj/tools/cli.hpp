#ifndef GRAPHLIM_CLI_HPP
#define GRAPHLIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace graphlim::cli {

// Runs one command. `args` excludes the program name. Returns the process
// exit code: 0 success, 2 usage error, 3 size cap exceeded, 4 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace graphlim::cli

#endif
