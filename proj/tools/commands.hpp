#ifndef HOSDT_TOOLS_COMMANDS_HPP_
#define HOSDT_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hosdt::cli {

// Runs the command line tool. `args` excludes the program name. Returns the
// process exit code: 0 on success, 1 on a runtime failure, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hosdt::cli

#endif  // HOSDT_TOOLS_COMMANDS_HPP_
