#pragma once

#include <string>

namespace svtprox {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Level comes from SVTPROX_LOG={error|info|debug}, default error.
LogLevel log_level();

void log_error(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace svtprox
