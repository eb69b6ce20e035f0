#include "tram/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace tram {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("TRAM_LOG");
        if (env == nullptr) return 0;
        const std::string_view v(env);
        if (v == "debug" || v == "2") return 2;
        if (v == "info" || v == "1") return 1;
        return 0;
    }();
    return level;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

void log_info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "info: " << message << '\n';
}

void log_debug(const std::string& message) {
    if (log_level() >= 2) std::cerr << "debug: " << message << '\n';
}

}  // namespace tram
