#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace comb::cli {

/// Runs `comb <args...>`; returns 0 on success, 2 on usage or validation errors and
/// 1 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace comb::cli
