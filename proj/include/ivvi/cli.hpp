#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivvi {

/// Runs the ivvi command line. `args` excludes the program name.
/// Returns 0 on success, 1 when a check or theorem fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ivvi
