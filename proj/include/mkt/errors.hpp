#pragma once

#include <stdexcept>
#include <string>

namespace mkt {

// Malformed user-supplied data: unparseable files, ids out of range,
// oversized inputs, values outside their documented domain.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// The library reached a state the underlying theory rules out (e.g. a
// self-verification failed).  Never a caller mistake; always a defect.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace mkt
