#ifndef CURVELAB_ERROR_HPP
#define CURVELAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace curvelab {

// Base for every error the library raises on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph, complex, word or file contents.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A search or enumeration grew past its configured element cap. This is a
// statement about the budget, not about the mathematics.
class ResourceCapExceeded : public Error {
public:
    using Error::Error;
};

// A homomorphism was applied before it was checked.
class UnverifiedHom : public Error {
public:
    using Error::Error;
};

// A cached artifact does not hash to the value recorded with it.
class CacheCorruption : public Error {
public:
    using Error::Error;
};

} // namespace curvelab

#endif // CURVELAB_ERROR_HPP
