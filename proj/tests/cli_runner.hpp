#pragma once

#include <string>
#include <vector>

namespace cli {

struct Result {
  int status = -1;
  /// stdout and stderr, followed by the contents of every file the command wrote into the scratch directory.
  std::string output;
};

/// Runs `binary args` through the shell with {out} in args replaced by a fresh scratch directory.
Result run(const std::string& binary, const std::string& args);

/// One invocation per command and output mode, over the files in data_dir.
std::vector<std::string> command_matrix(const std::string& data_dir);

}  // namespace cli
