#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace curvetower::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_precondition = 2;
inline constexpr int exit_soft_failure = 3; // not stabilized, dimension >= 2, budget exceeded

// Runs one job. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Command line that reproduces a report from its "input" member.
std::vector<std::string> args_from_input(const nlohmann::json& input);

} // namespace curvetower::cli
