#pragma once

#include <stdexcept>
#include <string>

namespace adic {

/// Base class for all errors raised by the kernel.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stated precondition of an operation was violated (rank mismatch,
/// missing certificate, catalog violation, unresolved name, ...).
/// The message quotes the violated precondition and the offending name.
struct PreconditionError : Error {
    using Error::Error;
};

/// The answer hinges on coefficients that are not known at the working
/// precision; re-running with a larger (N, D) may decide it.
struct UndecidableAtPrecision : Error {
    using Error::Error;
};

} // namespace adic
