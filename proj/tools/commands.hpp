#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace folkreg::cli {

/// Runs one subcommand. Returns 0 on success, 1 on usage / parse / argument
/// errors, 2 when a pipeline or embedding reports failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace folkreg::cli
