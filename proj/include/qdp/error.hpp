#pragma once

#include <stdexcept>
#include <string>

namespace qdp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gate or register reference that does not resolve inside its circuit.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Bad user input: unknown backend, unreadable file, invalid symbol.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A simulator was asked to do something it cannot represent.
class SimulationError : public Error {
public:
    using Error::Error;
};

}  // namespace qdp
