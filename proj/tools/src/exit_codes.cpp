#include "exit_codes.hpp"

namespace flatline::cli {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTranslationGluing:
    case ErrorCode::UnmatchedEdge:
    case ErrorCode::NonManifoldVertex:
    case ErrorCode::IrrationalAngle:
    case ErrorCode::DegeneratePolygon:
    case ErrorCode::NonIntegerGenus:
    case ErrorCode::SingularMatrix:
    case ErrorCode::BasisMismatch:
    case ErrorCode::NonConvexPolygon:
      return kSurface;
    case ErrorCode::SingularStart:
    case ErrorCode::SingularOrbit:
    case ErrorCode::NoBoundedClosingArc:
    case ErrorCode::ReturnNotFound:
    case ErrorCode::SingularEdgeCase:
      return kFlow;
    case ErrorCode::KeaneViolation:
    case ErrorCode::NonConvergence:
    case ErrorCode::NotPerron:
    case ErrorCode::NotPeriodicLoop:
      return kRenorm;
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::SolverFailure:
    case ErrorCode::GenusOne:
    case ErrorCode::RankIndeterminate:
      return kHodge;
    case ErrorCode::InsufficientSamples:
    case ErrorCode::ZeroMeanRequired:
    case ErrorCode::InvalidScales:
      return kSpectral;
    case ErrorCode::ConfigParse:
      return kConfigParse;
    case ErrorCode::Io:
      return kIo;
    case ErrorCode::InvalidArgument:
      return kInvalidArgument;
  }
  return kUnexpected;
}

}  // namespace flatline::cli
