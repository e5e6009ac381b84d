#pragma once
// Batch front-end entry point. Parses a subcommand tree, runs the requested
// operation, writes artifacts plus a run manifest into the output directory,
// and returns the contract exit code:
//   0  all validation flags passed or were waived
//   1  validation failure (or a numerical failure mid-run)
//   2  config error (bad flags, malformed config, invalid values)
//   3  regime-guard error (valid input outside the operation's regime)

#include <string>
#include <vector>

namespace bnls {

extern const char* kArtifactVersion;

int run_cli(const std::vector<std::string>& args);  // args without argv[0]
int run_cli(int argc, const char* const* argv);

}  // namespace bnls
