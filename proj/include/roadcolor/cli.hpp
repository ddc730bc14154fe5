#ifndef ROADCOLOR_CLI_HPP_
#define ROADCOLOR_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace roadcolor::cli {

  // Exit codes shared by every subcommand.
  inline constexpr int exit_ok        = 0;
  inline constexpr int exit_negative  = 1;  // not AGW, not synchronizing, too large
  inline constexpr int exit_input     = 2;  // malformed files or flags
  inline constexpr int exit_invariant = 3;  // internal invariant violated

  //! Runs the command line \p args (args[0] is the program name).
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace roadcolor::cli

#endif  // ROADCOLOR_CLI_HPP_
