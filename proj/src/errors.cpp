#include "tancascade/errors.hpp"

namespace tancascade {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::UnsidedPole: return "UnsidedPole";
    case ErrorKind::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::DerivativeNearOne: return "DerivativeNearOne";
    case ErrorKind::PoleOnCycle: return "PoleOnCycle";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotRenormalizable: return "NotRenormalizable";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::OrbitHitPole: return "OrbitHitPole";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ClosureFailed: return "ClosureFailed";
    case ErrorKind::SingularPartial: return "SingularPartial";
    case ErrorKind::BranchJump: return "BranchJump";
    case ErrorKind::OrderingViolated: return "OrderingViolated";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tancascade
