#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fg {

// Exit status: 0 pass, 1 check failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fg
