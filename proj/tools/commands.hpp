#ifndef TNZ_TOOLS_COMMANDS_HPP
#define TNZ_TOOLS_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tnz::cli
{

/// Exit codes.
inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kError = 2;

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tnz::cli

#endif // TNZ_TOOLS_COMMANDS_HPP
