#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace planegap {

enum class ErrorCode {
  kRotationMismatch,
  kEulerViolation,
  kNegativeLength,
  kBadVertex,
  kDisconnected,
  kEmptyTerminals,
  kDisconnectedAnchors,
  kPNotTree,
  kPNotSubgraph,
  kFaceRegistryMissing,
  kZeroDistancePair,
  kNotShortestPath,
  kNotOuterplanar,
  kNotOsInstance,
  kDominationViolation,
  kEmptyA,
  kInfiniteDilation,
  kVertexSetMismatch,
  kDisconnectedDemand,
  kZeroDemand,
  kNoSeparatedDemand,
  kTooLarge,
  kDegreeTooLarge,
  kPathExplosion,
  kBadParams,
  kParseError,
  kInvariantViolation,
};

std::string_view ToString(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// message is free-form context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  // The context without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

}  // namespace planegap
