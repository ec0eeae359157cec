#pragma once

#include <stdexcept>
#include <string>

namespace distweb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid boundary data: <3 vertices, self-intersection, repeated or
/// collinear vertex set, zero-length stadium axis.
struct DegenerateBoundary : Error {
    using Error::Error;
};

/// Query point outside the closed domain.
struct OutsideDomain : Error {
    using Error::Error;
};

/// Certificate requested at a regular point.
struct NotSingular : Error {
    using Error::Error;
};

/// p outside the superdifferential, or |p| >= 1.
struct NotInSuperdifferential : Error {
    using Error::Error;
};

struct InvalidReach : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

/// Second derivative of the profile requested at t = r.
struct SingularDerivative : Error {
    using Error::Error;
};

/// Profile fitting with bins too fine for the grid.
struct EmptyBin : Error {
    using Error::Error;
};

struct NoInteriorNodes : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace distweb
