#pragma once

#include <stdexcept>
#include <string>

namespace superell {

// Input violates a documented precondition. The CLI maps this to exit code 2.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A self-check failed. This always indicates a bug. The CLI maps it to exit code 1.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

}  // namespace superell
