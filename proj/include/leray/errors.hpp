#pragma once

#include <stdexcept>
#include <string>

namespace leray {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A subquotient or module whose stated invariants do not hold.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

// A linear map that fails to descend to the requested quotients; raised by
// induced_map when a commuting-square precondition is broken.
struct NotWellDefined : Error {
    explicit NotWellDefined(const std::string& what) : Error(what) {}
};

}  // namespace leray
