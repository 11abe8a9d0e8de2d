#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace displab::cli {

// Exit codes: 0 success, 1 contract failure, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// Write through a temporary file in the same directory, then rename over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace displab::cli
