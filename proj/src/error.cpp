#include "tvcm/error.hpp"

namespace tvcm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::EmptyData: return "empty_data";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::DegenerateDomain: return "degenerate_domain";
    case ErrorKind::NonIncreasingKnots: return "non_increasing_knots";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::InsufficientData: return "insufficient_data";
    case ErrorKind::SingularDesign: return "singular_design";
    case ErrorKind::BootstrapDegeneracy: return "bootstrap_degeneracy";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::NoFeasibleConfiguration: return "no_feasible_configuration";
    case ErrorKind::InfeasibleFold: return "infeasible_fold";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace tvcm
