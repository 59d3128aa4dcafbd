#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wshift::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Returns 0 when every executed certificate passes, 1 on any
/// failing certificate, 2 on usage or configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wshift::cli
