#pragma once

#include <stdexcept>
#include <string>

namespace conespec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// bad geometric or operator data
class ModelError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// solver breakdown, resonant series, unreliable discretization ...
class NumericError : public Error {
public:
    using Error::Error;
};

class PoleError : public NumericError {
public:
    using NumericError::NumericError;
};

class SusyFailure : public Error {
public:
    using Error::Error;
};

}  // namespace conespec
