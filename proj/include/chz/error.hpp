#pragma once

#include <stdexcept>
#include <string>

namespace chz {

enum class ErrorCode {
    DimensionMismatch,
    EmptySlice,
    OutsideRegion,
    NotDifferentiable,
    EmptyWindow,
    InvalidArgument,
    NegativeTime,
    Corner,
    NotOnHorizon,
    InsufficientProbes,
    StructureViolation,
    NoSceneFound,
    PreconditionFailed,
    CoincidentPoints,
    TangentPlane,
    CreaseExhausted,
    Parse,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace chz
