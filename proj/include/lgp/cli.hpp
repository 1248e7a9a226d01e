// Command-line front end: solve | certify | levelsets | scan | gap | list.
// Precedence for every setting: built-in default, then config file, then flag.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lgp {

// key = value lines, '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Exit codes: 0 success (certify: pass), 1 solve did not converge or a
// certificate failed, 2 usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace lgp
