#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltlplan::cli {

/// Exit codes shared by all commands.
enum Exit : int {
    kOk = 0,
    kFailure = 1,   // bad input, I/O or translation error
    kNoPlan = 2,    // every seed returned no plan
    kCapacity = 3,  // explicit product too large for the oracle
    kBelowThreshold = 4,  // compare: match rate under the threshold
};

/// Runs `planner <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltlplan::cli
