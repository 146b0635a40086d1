#pragma once

#include <stdexcept>
#include <string>

namespace mrsim {

/// Base class for every error raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PastEvent : public Error {
public:
    using Error::Error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidSpeed : public Error {
public:
    using Error::Error;
};

class NoNodes : public Error {
public:
    using Error::Error;
};

class Unsatisfiable : public Error {
public:
    using Error::Error;
};

class ZeroEnergy : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mrsim
