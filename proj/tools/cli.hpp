#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace restime::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCheck = 3;

struct Streams {
    std::ostream& out;
    std::ostream& err;
    /// Print a progress line for long simulations on `err`.
    bool progress = false;
};

/// Runs one command line (without the program name) and returns the exit
/// status. Results go to `out` unless --out names a file.
int run(const std::vector<std::string>& args, Streams streams);

}  // namespace restime::cli
