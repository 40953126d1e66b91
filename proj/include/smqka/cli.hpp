#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smqka {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAborted = 1;
inline constexpr int kExitConfigError = 2;

// Environment variable naming the directory reports go to when no --out is
// given.
inline constexpr const char* kOutDirEnv = "SMQKA_OUT_DIR";

// Entry point behind the smqka tool. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smqka
