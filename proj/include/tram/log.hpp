#pragma once

#include <string>

namespace tram {

/// Verbosity from the TRAM_LOG environment variable: unset/0 = warnings
/// only, 1/"info" = progress notes, 2/"debug" = per-step detail.
[[nodiscard]] int log_level();

void warn(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace tram
