#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocd::cli {

enum ExitCode { kSuccess = 0, kUserError = 2, kNumericalFailure = 3 };

// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "0.25,0.5" or a range "0.25..1.5" (step 0.25) or "0.25..1.5:0.5".
std::vector<double> parse_real_list(const std::string& text);
// "100,200" or "100..1000" (step 100) or "100..1000:50".
std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace ocd::cli
