#pragma once

#include <stdexcept>
#include <string>

namespace qpwh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value that would be NaN or infinite.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

class BranchCutError : public Error {
public:
    using Error::Error;
};

// Argument outside the admissible domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class ContourError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class GuardError : public Error {
public:
    using Error::Error;
};

class LogCutError : public Error {
public:
    using Error::Error;
};

class WindingError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace qpwh
