#ifndef SCS_ERRORS_HPP
#define SCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scs {

// Base class for all library errors. Callers that only need coarse
// "caller error vs internal" classification can catch this.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sector/family parameters violate a documented precondition.
struct InvalidSpec : Error {
    using Error::Error;
};

// An occupation state or basis has the wrong number of modes.
struct ModeMismatch : Error {
    using Error::Error;
};

// Mode index outside [0, mode_count).
struct ModeOutOfRange : Error {
    using Error::Error;
};

// Two objects live on incompatible sector bases.
struct SectorMismatch : Error {
    using Error::Error;
};

// Operator fails the Hermiticity tolerance required by the operation.
struct NotHermitian : Error {
    using Error::Error;
};

// Sector too large to densify.
struct DimensionTooLarge : Error {
    using Error::Error;
};

// Quadrature grid parameters out of range.
struct InvalidOrder : Error {
    using Error::Error;
};

// Grid exactness certificate does not cover the requested integrand degree;
// proceeding would produce a silently wrong result.
struct ExactnessInsufficient : Error {
    using Error::Error;
};

}  // namespace scs

#endif
