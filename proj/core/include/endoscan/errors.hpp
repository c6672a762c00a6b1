#pragma once

#include <stdexcept>
#include <string>

namespace endoscan {

// All domain errors derive from Error so callers can catch the library
// wholesale or a specific condition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotADiscriminant : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };
struct UnsupportedEll : Error { using Error::Error; };
struct UnsupportedN : Error { using Error::Error; };
struct BadReduction : Error { using Error::Error; };
struct AmbiguousOrder : Error { using Error::Error; };
struct NotOrdinary : Error { using Error::Error; };
struct InvalidKernel : Error { using Error::Error; };
struct EllMismatch : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct ScalarMatrix : Error { using Error::Error; };
struct PrecisionExceeded : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };
struct SpectraCollide : Error { using Error::Error; };
struct BadModulus : Error { using Error::Error; };
struct NotAField : Error { using Error::Error; };
struct Unresolved : Error { using Error::Error; };
struct MissingReport : Error { using Error::Error; };
struct CorruptCheckpoint : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace endoscan
