#pragma once

#include <stdexcept>
#include <string>

namespace pqa {

/// Base for every error raised by the pipeline libraries.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A configuration value outside its allowed range. `field()` names the key.
class RangeError : public Error {
public:
    RangeError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IndexGap : public Error {
public:
    using Error::Error;
};

/// An external provider failed and no fallback could produce a result.
class ProviderUnavailable : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pqa
