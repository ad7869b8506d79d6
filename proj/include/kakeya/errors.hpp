#pragma once

#include <stdexcept>
#include <string>

namespace kakeya {

// Caller passed arguments that violate an interface contract (mismatched
// fields, non-symmetric matrix, bad dimensions, ...).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Geometrically degenerate input: zero direction, coincident points,
// non-skew line triples and the like.
struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented operation precondition does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation is out of scope for the given field (e.g. characters of GF(p^2)).
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An enumeration cap was exceeded; the message names the cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A consistency check that should be unbreakable broke.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace kakeya
