#ifndef LOTFORGE_CLI_HPP
#define LOTFORGE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lotforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitSizeGuard = 3;

/// Subcommands gen, heur, pre, export, oracle, bench. `args` excludes the
/// program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace lotforge

#endif
