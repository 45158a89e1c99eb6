#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trimani {

enum class Errc {
  EmptyInput,
  NonPureInput,
  DuplicateFacet,
  InvalidLabel,
  NotAFace,
  NotAFacet,
  ParseError,
  IllegalMove,
  InvalidWeights,
  FacetsShareVertices,
  DistanceTooSmall,
  ResultNotManifold,
  DimensionMismatch,
  DimensionTooSmall,
  InvalidEuler,
  NotPrime,
  DegreeOutOfRange,
  InfeasibleTask,
  InvalidPrefix,
  PathInvalid,
  EndpointNotCertified,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Domain error raised by every module of the library. The CLI maps these to
/// exit status 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace trimani
