#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polydet {

enum class ErrorKind {
    InvalidArgument,
    DomainError,
    PoleAtOne,
    GammaPole,
    FieldMismatch,
    UnsupportedCharacter,
    NearZeroOfL,
    PathLeavesOmega,
    BranchStepTooLarge,
    NonClosedLoop,
    ResidualTooLarge,
    DegenerateSample,
    StencilLeavesDomain,
    ContourInvalid,
    EmptyZeroTable,
    ParseError,
    NonMonotoneError,
    NumericalFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace polydet
