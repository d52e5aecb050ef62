#pragma once

#include <stdexcept>
#include <string>

namespace driftlab {

// Raised for problems in user-supplied data, configuration, or arguments.
// The CLI maps DataError to exit code 2; any other exception is an internal
// error (exit code 1).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace driftlab
