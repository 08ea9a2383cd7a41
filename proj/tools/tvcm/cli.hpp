#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tvcm::cli {

/// Exit codes: 0 success, 1 a library error, 2 bad usage. Errors go to `err`
/// as one JSON object {"error": {"kind": ..., "message": ...}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvcm::cli
