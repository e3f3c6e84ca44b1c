#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsp {

enum class ErrorKind {
    NotHermitian,
    NotPSD,
    NotUnitary,
    NotSquare,
    NonFinite,
    UnknownLabel,
    DuplicateLabel,
    EmptyKeepSet,
    DimensionMismatch,
    InputsNotOrthonormal,
    InvalidState,
    AngleOutOfRange,
    DomainError,
    SingularSigma,
    ParseError,
    AuditFailure,
    InvalidTranscript,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace rsp
