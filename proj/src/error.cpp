#include "mcarma/error.hpp"

namespace mcarma {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::BadOrders: return "BadOrders";
    case ErrorKind::BadCovariance: return "BadCovariance";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::RootClusterAmbiguous: return "RootClusterAmbiguous";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::OmegaZero: return "OmegaZero";
    case ErrorKind::SeriesDomain: return "SeriesDomain";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnitModulusEta: return "UnitModulusEta";
    case ErrorKind::DegreeReductionFailed: return "DegreeReductionFailed";
    case ErrorKind::NotPD: return "NotPD";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::RootOnCircle: return "RootOnCircle";
    case ErrorKind::LyapunovIllConditioned: return "LyapunovIllConditioned";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::Numerical: return "Numerical";
  }
  return "Unknown";
}

}  // namespace mcarma
