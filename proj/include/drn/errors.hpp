#ifndef DRN_ERRORS_HPP
#define DRN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Row neighbor lists of an alist file disagree with the column lists.
struct InconsistentAdjacency : ParseError {
    using ParseError::ParseError;
};

struct IndexOutOfRange : ParseError {
    using ParseError::ParseError;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// rank(H) = n, so the code carries no information bits.
struct DegenerateCode : Error {
    using Error::Error;
};

struct InvalidRate : Error {
    using Error::Error;
};

struct TapeMismatch : Error {
    using Error::Error;
};

// Training loss became non-finite; the last good checkpoint is kept.
struct DivergenceDetected : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace drn

#endif
