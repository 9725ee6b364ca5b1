#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pamea {

/// Entry point behind the command-line tool. `args` excludes the program
/// name. Returns the process exit code: 0 success, 2 configuration error,
/// 3 I/O error, 4 statistical-input error.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

} // namespace pamea
