#pragma once

#include <stdexcept>
#include <string>

namespace ybe {

// Raised when an operation is asked to exceed its documented size cap
// (canonical forms above n=7, enumeration above its limits, ...).
struct size_limit_error : std::runtime_error {
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when group closure would exceed the configured element cap.
struct cap_exceeded_error : std::runtime_error {
    explicit cap_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ybe
