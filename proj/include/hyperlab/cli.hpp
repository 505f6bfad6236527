#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kResource = 3,
    kInternal = 4,
};

// Entry point shared by the hyperlab executable and the test suites.
// args[0] is the program name. Data goes to out unless --out is given, in
// which case it goes to that file and a <out>.manifest.json sidecar is
// written next to it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Merges "key=value" lines from a config file into args: every key becomes
// --key value unless the same flag is already on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

}  // namespace hyperlab::cli
