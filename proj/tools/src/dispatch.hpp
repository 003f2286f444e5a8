#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace flatline::cli {

// Command names understood by execute(), e.g. "flow twisted".
std::vector<std::string> command_names();

// Runs cfg["command"], writes the result to cfg["out"] (stdout by default)
// and the verdict to cfg["verdict"] when set. Errors are reported on stderr;
// the return value is the process exit status.
int execute(const Config& cfg);

}  // namespace flatline::cli
