#pragma once

#include <string>
#include <vector>

namespace korovkin::cli {

// Runs the korovkin-lab command line. Exit status: 0 success, 1 parse error,
// 2 numeric-domain error, 3 failed korovkin verdict under --strict.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace korovkin::cli
