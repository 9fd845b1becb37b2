#include "chz/error.hpp"

namespace chz {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::EmptySlice: return "empty slice";
        case ErrorCode::OutsideRegion: return "point outside region";
        case ErrorCode::NotDifferentiable: return "not differentiable";
        case ErrorCode::EmptyWindow: return "empty window";
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::NegativeTime: return "negative time";
        case ErrorCode::Corner: return "corner of boundary";
        case ErrorCode::NotOnHorizon: return "point not on horizon";
        case ErrorCode::InsufficientProbes: return "insufficient probes";
        case ErrorCode::StructureViolation: return "structure violation";
        case ErrorCode::NoSceneFound: return "no scene found";
        case ErrorCode::PreconditionFailed: return "precondition failed";
        case ErrorCode::CoincidentPoints: return "coincident points";
        case ErrorCode::TangentPlane: return "tangent plane";
        case ErrorCode::CreaseExhausted: return "crease exhausted";
        case ErrorCode::Parse: return "parse error";
    }
    return "unknown error";
}

}  // namespace chz
