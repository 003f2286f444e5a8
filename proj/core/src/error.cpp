#include "flatline/error.hpp"

namespace flatline {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonTranslationGluing: return "NonTranslationGluing";
    case ErrorCode::UnmatchedEdge: return "UnmatchedEdge";
    case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorCode::IrrationalAngle: return "IrrationalAngle";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::NonConvexPolygon: return "NonConvexPolygon";
    case ErrorCode::SingularStart: return "SingularStart";
    case ErrorCode::SingularOrbit: return "SingularOrbit";
    case ErrorCode::NoBoundedClosingArc: return "NoBoundedClosingArc";
    case ErrorCode::ReturnNotFound: return "ReturnNotFound";
    case ErrorCode::SingularEdgeCase: return "SingularEdgeCase";
    case ErrorCode::KeaneViolation: return "KeaneViolation";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotPerron: return "NotPerron";
    case ErrorCode::NotPeriodicLoop: return "NotPeriodicLoop";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::GenusOne: return "GenusOne";
    case ErrorCode::RankIndeterminate: return "RankIndeterminate";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ZeroMeanRequired: return "ZeroMeanRequired";
    case ErrorCode::InvalidScales: return "InvalidScales";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace flatline
