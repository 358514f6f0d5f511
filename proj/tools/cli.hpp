#pragma once

// `dwl` command-line front end. run() is the whole program minus process
// setup so tests can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

#include "dwl/errors.hpp"
#include "selfcheck.hpp"

namespace dwl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIntegrity = 65;
inline constexpr int kExitMissing = 66;

inline constexpr const char* kVersion = "1.0.0";

int exit_code(ErrorKind kind);

struct Hooks {
  selfcheck::Product product;  // replaces the Clifford product in clifford-selfcheck
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace dwl::cli
