#pragma once

#include <stdexcept>
#include <string>

namespace lzkkp {

// Base of everything the library throws. The C API maps each subclass to a
// status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller passed an argument outside the documented domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A suffix array (or permutation derived from one) failed validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A factorization does not describe a decodable text.
class MalformedFactorization : public Error {
public:
    using Error::Error;
};

// An on-disk file or stream does not match its declared layout.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lzkkp
