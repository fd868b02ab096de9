#ifndef SHAFBOUND_ERROR_HPP
#define SHAFBOUND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shafbound {

// Rejected argument or malformed user input. The CLI maps this to exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Violated internal invariant (inexact division, identity re-check, rank
// mismatch). Always a bug; the CLI maps this to exit code 3.
struct InternalCheck : std::logic_error {
    using std::logic_error::logic_error;
};

// Exact representation would exceed the configured digit ceiling, or an
// exact computation is out of reach for the requested instance.
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const char* what) {
    if (!ok) throw InternalCheck(what);
}

}  // namespace shafbound

#endif
