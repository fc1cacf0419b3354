#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmoore {

// Batch front end. Exit codes: 0 ok, 1 invariant/check failure, 2 usage or
// input error, 3 caps exhausted. Output is deterministic for a fixed
// command line and seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

extern const char* const kVersionTag;

}  // namespace qmoore
