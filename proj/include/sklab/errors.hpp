#pragma once

#include <stdexcept>
#include <string>

namespace sklab {

/// Base class for all structural/numerical failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A vector length does not equal n(n+1)/2 for any integer n.
struct LengthNotTriangular : Error {
  using Error::Error;
};

/// An iterative eigensolver (or LAPACK backend) failed to converge.
struct NoConvergence : Error {
  using Error::Error;
};

/// Eigenvalues r and r+1 coincide, so the top-r eigenprojector is ill-defined.
struct DegenerateGap : Error {
  using Error::Error;
};

/// A projector diagonal entry vanished; the witness normalization is undefined.
struct DegenerateDiagonal : Error {
  using Error::Error;
};

/// Inputs that are required to be algebraically consistent are not.
struct InconsistentInputs : Error {
  using Error::Error;
};

/// The requested extension does not exist at these dimensions.
struct InfeasibleDimension : Error {
  using Error::Error;
};

/// A frame that must span its ambient space does not.
struct RankDeficient : Error {
  using Error::Error;
};

/// A gaussian conditioning system has no solution on the covariance support.
struct InconsistentConstraints : Error {
  using Error::Error;
};

/// A symmetric-tensor computation exceeds the configured dimension budget.
struct DimBudgetExceeded : Error {
  using Error::Error;
};

}  // namespace sklab
