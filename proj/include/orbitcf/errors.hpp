#pragma once

#include <stdexcept>
#include <string>

namespace orbitcf {

/// Invalid configuration value; the message names the violated bound.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller passed arguments outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ill-conditioned or non-finite intermediate value.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace orbitcf
