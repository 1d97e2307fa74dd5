#pragma once

#include <stdexcept>
#include <string>

namespace gsrplab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteInput : Error { using Error::Error; };
struct ZeroSubspace : Error { using Error::Error; };
struct DirectSumViolation : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct LambdaOutOfRange : Error { using Error::Error; };
struct UnsupportedRow : Error { using Error::Error; };
struct InputNotInSubspace : Error { using Error::Error; };
struct GridTooNarrow : Error { using Error::Error; };
struct UnsupportedOrder : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };
struct ConfigSemanticError : Error { using Error::Error; };
struct MissingLambda : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace gsrplab
