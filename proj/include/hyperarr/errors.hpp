#pragma once

#include <stdexcept>
#include <string>

namespace hyperarr {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated precondition or misused API (order mismatch, bad index, ...).
struct usage_error : error {
    explicit usage_error(const std::string& what) : error(what) {}
};

/// Malformed or unreadable input file.
struct io_error : error {
    explicit io_error(const std::string& what) : error(what) {}
};

/// A search exceeded its deadline.
struct timeout_error : error {
    explicit timeout_error(const std::string& what) : error(what) {}
};

} // namespace hyperarr
