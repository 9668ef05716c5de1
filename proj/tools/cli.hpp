#pragma once

// Command-line front end: validate, decay, optimality, kernel-bound.
// Exit codes: 0 pass, 1 numerical or criterion failure, 2 usage error.

namespace hdecay::cli {

inline constexpr const char* kToolVersion = "0.1.0";

int run(int argc, const char* const* argv);

}  // namespace hdecay::cli
