#include "planegap/error.hpp"

namespace planegap {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRotationMismatch: return "ROTATION_MISMATCH";
    case ErrorCode::kEulerViolation: return "EULER_VIOLATION";
    case ErrorCode::kNegativeLength: return "NEGATIVE_LENGTH";
    case ErrorCode::kBadVertex: return "BAD_VERTEX";
    case ErrorCode::kDisconnected: return "DISCONNECTED";
    case ErrorCode::kEmptyTerminals: return "EMPTY_TERMINALS";
    case ErrorCode::kDisconnectedAnchors: return "DISCONNECTED_ANCHORS";
    case ErrorCode::kPNotTree: return "P_NOT_TREE";
    case ErrorCode::kPNotSubgraph: return "P_NOT_SUBGRAPH";
    case ErrorCode::kFaceRegistryMissing: return "FACE_REGISTRY_MISSING";
    case ErrorCode::kZeroDistancePair: return "ZERO_DISTANCE_PAIR";
    case ErrorCode::kNotShortestPath: return "NOT_SHORTEST_PATH";
    case ErrorCode::kNotOuterplanar: return "NOT_OUTERPLANAR";
    case ErrorCode::kNotOsInstance: return "NOT_OS_INSTANCE";
    case ErrorCode::kDominationViolation: return "DOMINATION_VIOLATION";
    case ErrorCode::kEmptyA: return "EMPTY_A";
    case ErrorCode::kInfiniteDilation: return "INFINITE_DILATION";
    case ErrorCode::kVertexSetMismatch: return "VERTEX_SET_MISMATCH";
    case ErrorCode::kDisconnectedDemand: return "DISCONNECTED_DEMAND";
    case ErrorCode::kZeroDemand: return "ZERO_DEMAND";
    case ErrorCode::kNoSeparatedDemand: return "NO_SEPARATED_DEMAND";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kDegreeTooLarge: return "DEGREE_TOO_LARGE";
    case ErrorCode::kPathExplosion: return "PATH_EXPLOSION";
    case ErrorCode::kBadParams: return "BAD_PARAMS";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kInvariantViolation: return "INVARIANT_VIOLATION";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(ToString(code)) + ": " + what),
      code_(code),
      detail_(what) {}

void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace planegap
