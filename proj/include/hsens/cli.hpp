#pragma once

#include <string>
#include <vector>

namespace hsens {

// Command-line front end. Subcommands: construct | measure | verify | scan |
// report | oracle. Returns 0 on success, 1 on a claim violation, 2 on usage
// errors.
int cli_run(const std::vector<std::string>& args);

}  // namespace hsens
