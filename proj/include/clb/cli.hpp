#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clb {

// Dispatches one CLI invocation. Exit codes: 0 holds/equivalent,
// 1 refuted/distinguished, 2 inconclusive, 3 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace clb
