#pragma once

#include <stdexcept>
#include <string>

namespace ringsolve {

enum class ErrorKind {
    InvalidParameter,
    InvalidArgument,
    NotARing,
    PreconditionViolation,
    Unsupported,
    SizeError,
    CapacityError,
    InvalidCertificate,
    ParseError,
    InternalError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse failures carry the byte offset into the offending text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace ringsolve
