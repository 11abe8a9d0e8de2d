#pragma once

#include <stdexcept>
#include <string>

namespace displab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (out-of-band frequency, p outside (0,4), ...).
struct DomainError : Error {
    using Error::Error;
};

// A profile that is not in the space an operation needs (divergent Sobolev integral,
// pointwise sampling below H^{1/2}).
struct NotInSpaceError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct BlowUpError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    ConfigError(const std::string& msg, int line, std::string field)
        : Error(msg), line(line), field(std::move(field)) {}
    int line;  // 0 when not tied to a line
    std::string field;
};

}  // namespace displab
