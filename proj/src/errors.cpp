#include "rsp/errors.hpp"

namespace rsp {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::DuplicateLabel: return "DuplicateLabel";
        case ErrorKind::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InputsNotOrthonormal: return "InputsNotOrthonormal";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::AngleOutOfRange: return "AngleOutOfRange";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::SingularSigma: return "SingularSigma";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::AuditFailure: return "AuditFailure";
        case ErrorKind::InvalidTranscript: return "InvalidTranscript";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace rsp
