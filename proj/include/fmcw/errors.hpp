#pragma once

#include <stdexcept>
#include <string>

namespace fmcw {

// Configuration / scenario-consistency problems (CLI exit code 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// File-system problems on output paths (CLI exit code 3).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fmcw
