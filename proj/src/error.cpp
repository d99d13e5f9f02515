#include "ringsolve/error.hpp"

namespace ringsolve {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotARing: return "not-a-ring";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::SizeError: return "size-error";
    case ErrorKind::CapacityError: return "capacity-error";
    case ErrorKind::InvalidCertificate: return "invalid-certificate";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::InternalError: return "internal-error";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(ErrorKind::ParseError, message + " (at offset " + std::to_string(position) + ")"),
      position_(position) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

} // namespace ringsolve
