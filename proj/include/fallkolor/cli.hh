#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fallkolor::cli {

inline constexpr const char * tool_version = "1.0.0";

/// Exit codes shared by every command.
enum ExitCode : int {
    ok = 0,
    verify_failed = 1,
    usage = 2,
    inconclusive = 3,
    construction_unverified = 4,
};

/// Runs one command line. `args` excludes the program name.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

}
