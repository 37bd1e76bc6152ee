#ifndef AMBICLASS_CLI_HPP
#define AMBICLASS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ambiclass {

// Runs one CLI invocation.  Returns the process exit code: 0 success,
// 2 mathematical precondition violation, 1 internal error, 64 usage.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ambiclass

#endif
