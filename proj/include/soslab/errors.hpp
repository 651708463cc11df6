#pragma once

#include <stdexcept>
#include <string>

namespace soslab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroInput : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotEvenDegree : Error {
    using Error::Error;
};
struct UnknownForm : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct NotPsd : Error {
    using Error::Error;
};
struct BasisTooSmall : Error {
    using Error::Error;
};
struct NotChordal : Error {
    using Error::Error;
};
struct NotOnVariety : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct DegenerateConfiguration : Error {
    using Error::Error;
};
struct NotInSubspace : Error {
    using Error::Error;
};

}  // namespace soslab
