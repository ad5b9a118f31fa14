#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

// Minimal stderr logger. Verbosity comes from FMCW_SAR_LOG
// (error|warn|info|debug); default is warn.

namespace fmcw::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

inline Level threshold() {
    static const Level lvl = [] {
        const char* env = std::getenv("FMCW_SAR_LOG");
        if (env == nullptr) return Level::warn;
        if (std::strcmp(env, "error") == 0) return Level::error;
        if (std::strcmp(env, "warn") == 0) return Level::warn;
        if (std::strcmp(env, "info") == 0) return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::warn;
    }();
    return lvl;
}

inline void emit(Level lvl, const char* tag, const char* fmt, va_list args) {
    if (lvl > threshold()) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}

inline void error(const char* fmt, ...) {
    va_list a;
    va_start(a, fmt);
    emit(Level::error, "error", fmt, a);
    va_end(a);
}
inline void warn(const char* fmt, ...) {
    va_list a;
    va_start(a, fmt);
    emit(Level::warn, "warn", fmt, a);
    va_end(a);
}
inline void info(const char* fmt, ...) {
    va_list a;
    va_start(a, fmt);
    emit(Level::info, "info", fmt, a);
    va_end(a);
}
inline void debug(const char* fmt, ...) {
    va_list a;
    va_start(a, fmt);
    emit(Level::debug, "debug", fmt, a);
    va_end(a);
}

}  // namespace fmcw::log
