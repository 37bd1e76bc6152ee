#ifndef AMBICLASS_ERRORS_HPP
#define AMBICLASS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ambiclass {

// Violated mathematical precondition (caller error; CLI exit code 2).
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Impossible internal state (implementation bug; CLI exit code 1).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ambiclass

#endif
