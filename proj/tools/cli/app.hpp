#pragma once

#include <ostream>

namespace invreg::cli {

/// Parses argv (subcommand, optional --config file, flags) and runs the command.
/// Returns 0 on success, 2 on configuration errors and 3 on partial failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invreg::cli
