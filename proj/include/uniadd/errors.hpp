#pragma once

#include <stdexcept>

namespace uniadd {

// Bad mathematical input (maps to CLI exit code 1).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured cap was exceeded (maps to CLI exit code 3).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace uniadd
