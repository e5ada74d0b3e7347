#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcarma {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes: validation kinds give 2, numerical kinds give 3.
enum class ErrorKind {
  // validation
  BadInput,
  BadOrders,
  BadCovariance,
  Unstable,
  // numerical
  RootClusterAmbiguous,
  PoleEvaluation,
  OmegaZero,
  SeriesDomain,
  BudgetExceeded,
  UnitModulusEta,
  DegreeReductionFailed,
  NotPD,
  NoConvergence,
  RootOnCircle,
  LyapunovIllConditioned,
  NotPSD,
  Numerical,
};

std::string_view to_string(ErrorKind kind) noexcept;

inline bool is_validation_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::BadInput || kind == ErrorKind::BadOrders ||
         kind == ErrorKind::BadCovariance || kind == ErrorKind::Unstable;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mcarma
