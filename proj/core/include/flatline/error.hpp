#pragma once

#include <stdexcept>
#include <string>

namespace flatline {

// Every failure the library reports carries one of these codes. The CLI maps
// each family onto a distinct process exit status (see tools/exit_codes.hpp).
enum class ErrorCode {
  // surface
  NonTranslationGluing,
  UnmatchedEdge,
  NonManifoldVertex,
  IrrationalAngle,
  DegeneratePolygon,
  NonIntegerGenus,
  SingularMatrix,
  BasisMismatch,
  NonConvexPolygon,
  // flow
  SingularStart,
  SingularOrbit,
  NoBoundedClosingArc,
  ReturnNotFound,
  SingularEdgeCase,
  // renorm
  KeaneViolation,
  NonConvergence,
  NotPerron,
  NotPeriodicLoop,
  // hodge
  DegenerateTriangle,
  SolverFailure,
  GenusOne,
  RankIndeterminate,
  // spectral
  InsufficientSamples,
  ZeroMeanRequired,
  InvalidScales,
  // plumbing
  ConfigParse,
  Io,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatline
