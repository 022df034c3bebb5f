#include "curlinv/errors.hpp"

namespace curlinv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateTet: return "DuplicateTet";
    case ErrorCode::kDanglingVertexId: return "DanglingVertexId";
    case ErrorCode::kDegenerateTet: return "DegenerateTet";
    case ErrorCode::kUnknownIndex: return "UnknownIndex";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotIncident: return "NotIncident";
    case ErrorCode::kNotLive: return "NotLive";
    case ErrorCode::kMissingValue: return "MissingValue";
    case ErrorCode::kZeroBlockViolation: return "ZeroBlockViolation";
    case ErrorCode::kNotSolenoidal: return "NotSolenoidal";
    case ErrorCode::kNotCurlFree: return "NotCurlFree";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kNonManifoldFace: return "NonManifoldFace";
    case ErrorCode::kNotASpanningTree: return "NotASpanningTree";
    case ErrorCode::kInconsistentInput: return "InconsistentInput";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kTopologyBroken: return "TopologyBroken";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace curlinv
